#include "cli.hpp"

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "spartan/auth_service.hpp"
#include "spartan/codec.hpp"
#include "spartan/corpus.hpp"
#include "spartan/cracker.hpp"
#include "spartan/credential.hpp"
#include "spartan/entropy.hpp"
#include "spartan/entry_session.hpp"
#include "spartan/error.hpp"
#include "spartan/http_server.hpp"
#include "spartan/kdf.hpp"
#include "spartan/shape.hpp"

namespace spartan::cli {
namespace {

using nlohmann::ordered_json;

struct Dims {
  int rows = 12;
  int cols = 12;
};

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad " + std::string(what) + ": " + std::string(text));
  }
  return value;
}

// "12x12"
Dims parse_dims(std::string_view text) {
  auto x = text.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "grid must look like ROWSxCOLS: " + std::string(text));
  }
  return {parse_int(text.substr(0, x), "grid rows"), parse_int(text.substr(x + 1), "grid cols")};
}

// "row,col", 0-based
Coord parse_coord(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "start must look like ROW,COL: " + std::string(text));
  }
  return {parse_int(text.substr(0, comma), "start row"), parse_int(text.substr(comma + 1), "start col")};
}

const CLI::Validator kDims(
    [](std::string& value) -> std::string {
      try {
        parse_dims(value);
        return {};
      } catch (const Error& e) {
        return e.what();
      }
    },
    "ROWSxCOLS");

const CLI::Validator kStrategyName(
    [](std::string& value) -> std::string {
      try {
        StrategyRule::parse(value);
        return {};
      } catch (const Error& e) {
        return e.what();
      }
    },
    "STRATEGY");

std::vector<StrategyRule> parse_rules(const std::vector<std::string>& names) {
  std::vector<StrategyRule> rules;
  for (const auto& n : names) rules.push_back(StrategyRule::parse(n));
  return rules;
}

BigInt parse_big(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "not a non-negative integer: " + text);
  }
  return BigInt(text);
}

// Each subcommand fills one of these from its flags.

struct SpaceArgs {
  int alphabet = 36;
  int length = 8;
  std::string grid = "12x12";
  std::vector<std::string> strategies;
};

struct EntropyArgs {
  bool curve = false;
  int max_length = 30;
  std::optional<int> length;
  std::string kind = "user-linear";
  int alphabet = 95;
  int cells = 144;
  std::string space;
  double likelihood = 1.0;
};

struct CorpusArgs {
  std::string corpus;
  std::string tagged;
  std::string grid = "12x12";
  std::string charset = default_alphabet();
  bool heatmap_csv = false;
};

struct CrackArgs {
  std::string store;
  std::string dictionary;
  std::vector<std::string> strategies{"horizontal-lr"};
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string charset = default_alphabet();
  std::uint64_t snake_budget = kDefaultSnakeBudget;
  bool stop_on_recovery = false;
  std::string checkpoint;
  bool resume = false;
  bool timing = false;
};

struct TradeoffArgs {
  std::string corpus;
  std::string dictionary;
  std::vector<std::string> strategies{"fixed-top-left", "horizontal-lr", "horizontal-both",
                                      "straight-any"};
  std::string charset = default_alphabet();
  std::uint64_t snake_budget = kDefaultSnakeBudget;
};

struct ServeArgs {
  std::string listen = "127.0.0.1:8080";
  std::string store = "spartan_credentials.txt";
  std::string grid = "12x12";
  int palette = 6;
  std::string kdf_profile = "interactive";
  std::string static_dir;
};

struct EncodeArgs {
  std::string grid = "12x12";
  std::string charset = default_alphabet();
  std::string tagged;
  std::string canonical;
  std::string text;
  std::string start = "0,0";
  std::string direction = "E";
  std::string salt;
  std::string kdf_profile = "test";
};

struct VerifyArgs {
  std::string store = "spartan_credentials.txt";
  std::string username;
  std::string tagged;
  std::string charset = default_alphabet();
};

int cmd_space(const SpaceArgs& a, std::ostream& out) {
  Dims d = parse_dims(a.grid);
  GridSpec grid(d.rows, d.cols, "ab", 1, 0);
  double linear = linear_space_bits(a.alphabet, a.length);
  double spartan = spartan_space_bits(a.alphabet, a.length, grid.cell_count());
  out << "quantity,exact,rounded\n";
  out << "linear_bits," << format_bits(linear) << ',' << round_half_up(linear) << '\n';
  out << "spartan_bits," << format_bits(spartan) << ',' << round_half_up(spartan) << '\n';
  for (const auto& name : a.strategies) {
    AttackStrategy s{StrategyRule::parse(name), grid};
    BigInt factor = expansion_factor(s, a.length);
    out << "factor:" << s.rule.name() << ',' << factor.str() << ',' << to_scientific(factor) << '\n';
  }
  return 0;
}

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  if (a.curve) {
    out << curve_csv(entropy_curve(a.max_length, {a.alphabet, a.cells}));
    return 0;
  }
  double bits = 0;
  if (a.kind == "attack") {
    bits = eq1_entropy({parse_big(a.space), a.likelihood});
  } else {
    if (!a.length) throw Error(ErrorCode::InvalidArgument, "--length is required");
    int n = *a.length;
    if (a.kind == "user-linear") bits = user_linear_entropy(n);
    else if (a.kind == "user-spartan") bits = user_spartan_entropy(n);
    else if (a.kind == "random-linear") bits = random_entropy(a.alphabet, n);
    else bits = random_entropy(a.alphabet, n, a.cells);
  }
  out << format_bits(bits) << ' ' << round_half_up(bits) << '\n';
  return 0;
}

std::vector<Placement> load_placements(const CorpusArgs& a) {
  if (!a.corpus.empty()) return read_corpus_file(a.corpus, a.charset);
  Dims d = parse_dims(a.grid);
  return {from_tagged(GridSpec(d.rows, d.cols, a.charset, 1, 0), a.tagged)};
}

int cmd_classify(const CorpusArgs& a, std::ostream& out) {
  for (const Placement& p : load_placements(a)) {
    if (p.size() < 2) {
      out << R"({"class":null,"reason":"fewer than two cells"})" << '\n';
      continue;
    }
    out << to_json(classify(p)).dump() << '\n';
  }
  return 0;
}

int cmd_stats(const CorpusArgs& a, std::ostream& out) {
  auto corpus = load_placements(a);
  CorpusStats stats = corpus_stats(corpus);
  if (a.heatmap_csv) {
    out << heatmap_csv(stats);
  } else {
    out << to_json(stats).dump(2) << '\n';
  }
  return 0;
}

int cmd_crack(const CrackArgs& a, std::ostream& out, std::ostream& err) {
  auto records = read_credential_file(a.store);
  auto dictionary = read_word_list_file(a.dictionary);
  auto rules = parse_rules(a.strategies);

  CrackOptions options;
  options.workers = a.workers;
  options.alphabet = a.charset;
  options.snake_budget = a.snake_budget;
  options.stop_on_recovery = a.stop_on_recovery;
  if (a.resume) {
    if (a.checkpoint.empty()) throw Error(ErrorCode::InvalidArgument, "--resume needs --checkpoint");
    std::ifstream in(a.checkpoint);
    std::string text;
    if (in && std::getline(in, text) && !text.empty()) {
      options.resume_from = Checkpoint::parse(text);
      err << "resuming at " << text << '\n';
    }
  }
  if (!a.checkpoint.empty()) {
    std::filesystem::path path = a.checkpoint;
    options.on_checkpoint = [path](const Checkpoint& c) {
      // Write then rename so an interrupted run never leaves a torn file.
      auto tmp = path;
      tmp += ".tmp";
      {
        std::ofstream f(tmp, std::ios::trunc);
        f << c.to_string() << '\n';
      }
      std::filesystem::rename(tmp, path);
    };
  }

  CrackReport report = crack(records, dictionary, rules, options);

  ordered_json doc;
  doc["records"] = report.records;
  doc["candidates_generated"] = report.candidates_generated;
  doc["hashes_computed"] = report.hashes_computed;
  doc["words_skipped"] = report.words_skipped;
  doc["recovered"] = ordered_json::array();
  for (const Recovery& r : report.recovered) {
    doc["recovered"].push_back({{"username", r.username},
                                {"word", r.word},
                                {"strategy", r.strategy},
                                {"tagged", to_tagged(r.placement)}});
  }
  doc["recovery_fraction"] = report.recovery_fraction;
  if (a.timing) doc["elapsed_seconds"] = report.elapsed_seconds;
  out << doc.dump(2) << '\n';
  err << "elapsed " << report.elapsed_seconds << " s\n";
  return 0;
}

int cmd_tradeoff(const TradeoffArgs& a, std::ostream& out) {
  auto corpus = read_corpus_file(a.corpus, a.charset);
  auto dictionary = read_word_list_file(a.dictionary);
  out << tradeoff_csv(tradeoff_curve(corpus, dictionary, parse_rules(a.strategies), a.snake_budget));
  return 0;
}

int cmd_serve(const ServeArgs& a, std::ostream& err) {
  auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "listen address must be HOST:PORT");
  }
  std::string host = a.listen.substr(0, colon);
  int port = parse_int(std::string_view(a.listen).substr(colon + 1), "port");
  Dims d = parse_dims(a.grid);

  ServiceConfig config;
  config.rows = d.rows;
  config.cols = d.cols;
  config.palette_size = a.palette;
  config.kdf = kdf_profile(a.kdf_profile);
  config.store_path = a.store;
  GridSpec(d.rows, d.cols, config.alphabet, a.palette, 0);  // validate early

  // Handle SIGINT/SIGTERM on a dedicated thread so stop() never runs
  // inside a signal handler.
  sigset_t signals, previous;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  AuthService service(config);
  std::optional<std::filesystem::path> static_dir;
  if (!a.static_dir.empty()) static_dir = a.static_dir;
  HttpServer server(service, static_dir);
  int bound = server.bind(host, port);
  err << "listening on http://" << host << ':' << bound << " (store " << a.store << ", "
      << service.store().size() << " records)\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  err << "stopped\n";
  return 0;
}

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  Dims d = parse_dims(a.grid);
  GridSpec grid(d.rows, d.cols, a.charset, 1, 0);
  int given = !a.tagged.empty() + !a.canonical.empty() + !a.text.empty();
  if (given != 1) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --tagged, --canonical, --text");
  }
  std::optional<Placement> p;
  if (!a.tagged.empty()) {
    p = from_tagged(grid, a.tagged);
  } else if (!a.canonical.empty()) {
    p = from_canonical(grid, a.canonical);
  } else {
    auto dir = parse_direction(a.direction);
    if (!dir) throw Error(ErrorCode::InvalidArgument, "unknown direction: " + a.direction);
    EntrySession session(grid);
    session.set_cursor(parse_coord(a.start)).set_direction(*dir).input_text(a.text);
    p = session.placement();
  }

  ordered_json doc;
  doc["grid"] = {{"rows", d.rows}, {"cols", d.cols}};
  doc["tagged"] = to_tagged(*p);
  doc["canonical"] = to_canonical(*p);
  if (!a.salt.empty()) {
    auto salt = base64_decode(a.salt);
    if (salt.size() != kSaltBytes) {
      throw Error(ErrorCode::InvalidArgument, "salt must decode to 16 bytes");
    }
    KdfParams params = kdf_profile(a.kdf_profile);
    doc["hash"] = base64_encode(hash_password(*p, salt, params));
  }
  out << doc.dump() << '\n';
  return 0;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const CredentialRecord* rec = nullptr;
  auto records = read_credential_file(a.store);
  for (const auto& r : records) {
    if (r.username == a.username) rec = &r;
  }
  if (!rec) throw Error(ErrorCode::InvalidArgument, "no record for user " + a.username);
  Placement p = from_tagged(rec->grid.to_grid(a.charset), a.tagged);
  ordered_json doc;
  doc["username"] = a.username;
  doc["match"] = verify(p, *rec);
  out << doc.dump() << '\n';
  return 0;
}

int report_error(std::ostream& err, bool json, std::string_view code, const std::string& message,
                 std::optional<std::size_t> offset = std::nullopt) {
  if (json) {
    ordered_json doc;
    doc["error"]["code"] = code;
    doc["error"]["message"] = message;
    if (offset) doc["error"]["offset"] = *offset;
    err << doc.dump() << '\n';
  } else {
    err << "spartan: " << message << '\n';
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SPARTAN two-dimensional password toolkit", "spartan"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_errors = false;
  app.add_flag("--json", json_errors, "Report errors on stderr as JSON");

  SpaceArgs space;
  auto* space_cmd = app.add_subcommand("space", "Password space sizes and expansion factors");
  space_cmd->add_option("--alphabet", space.alphabet, "Alphabet size")->check(CLI::Range(2, 1 << 20));
  space_cmd->add_option("--length", space.length, "Password length")->check(CLI::NonNegativeNumber);
  space_cmd->add_option("--grid", space.grid, "Grid dimensions")->check(kDims);
  space_cmd->add_option("--strategy", space.strategies, "Also print this strategy's expansion factor")
      ->check(kStrategyName);

  EntropyArgs entropy;
  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy estimates");
  entropy_cmd->add_flag("--curve", entropy.curve, "Emit the four-series length curve as CSV");
  entropy_cmd->add_option("--max-length", entropy.max_length, "Curve length")->check(CLI::PositiveNumber);
  entropy_cmd->add_option("--length", entropy.length, "Password length")->check(CLI::PositiveNumber);
  entropy_cmd->add_option("--kind", entropy.kind, "Estimate to compute")
      ->check(CLI::IsMember({"user-linear", "user-spartan", "random-linear", "random-spartan", "attack"}));
  entropy_cmd->add_option("--alphabet", entropy.alphabet, "Random-password alphabet size")
      ->check(CLI::Range(2, 1 << 20));
  entropy_cmd->add_option("--cells", entropy.cells, "Grid cells for random SPARTAN")->check(CLI::PositiveNumber);
  entropy_cmd->add_option("--space", entropy.space, "Attack dictionary size (kind attack)");
  entropy_cmd->add_option("--likelihood", entropy.likelihood, "Attack success likelihood (kind attack)");

  CorpusArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Shape class of each placement");
  auto* corpus_opt = classify_cmd->add_option("--corpus", classify_args.corpus, "JSON-lines corpus")
                         ->check(CLI::ExistingFile);
  auto* tagged_opt = classify_cmd->add_option("--tagged", classify_args.tagged, "One tagged placement");
  corpus_opt->excludes(tagged_opt);
  classify_cmd->add_option("--grid", classify_args.grid, "Grid for --tagged")->check(kDims);
  classify_cmd->add_option("--charset", classify_args.charset, "Permitted characters");

  CorpusArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--corpus", stats_args.corpus, "JSON-lines corpus")
      ->required()
      ->check(CLI::ExistingFile);
  stats_cmd->add_option("--charset", stats_args.charset, "Permitted characters");
  stats_cmd->add_flag("--heatmap-csv", stats_args.heatmap_csv, "Emit only the heatmap as CSV");

  CrackArgs crack_args;
  auto* crack_cmd = app.add_subcommand("crack", "Dictionary attack on a credential store");
  crack_cmd->add_option("--store", crack_args.store, "Credential file")->required()->check(CLI::ExistingFile);
  crack_cmd->add_option("--dictionary", crack_args.dictionary, "Word list")
      ->required()
      ->check(CLI::ExistingFile);
  crack_cmd->add_option("--strategy", crack_args.strategies, "Expansion strategy (repeatable)")
      ->check(kStrategyName);
  crack_cmd->add_option("--workers", crack_args.workers, "Hashing threads")->check(CLI::PositiveNumber);
  crack_cmd->add_option("--charset", crack_args.charset, "Permitted characters");
  crack_cmd->add_option("--snake-budget", crack_args.snake_budget, "Path budget per snake word");
  crack_cmd->add_flag("--stop-on-recovery", crack_args.stop_on_recovery,
                      "Stop attacking a record once it is recovered");
  crack_cmd->add_option("--checkpoint", crack_args.checkpoint, "Progress file");
  crack_cmd->add_flag("--resume", crack_args.resume, "Resume from the progress file");
  crack_cmd->add_flag("--timing", crack_args.timing, "Include elapsed time in the report");

  TradeoffArgs tradeoff_args;
  auto* tradeoff_cmd = app.add_subcommand("tradeoff", "Dictionary size against recovery rate");
  tradeoff_cmd->add_option("--corpus", tradeoff_args.corpus, "JSON-lines corpus of plaintext placements")
      ->required()
      ->check(CLI::ExistingFile);
  tradeoff_cmd->add_option("--dictionary", tradeoff_args.dictionary, "Word list")
      ->required()
      ->check(CLI::ExistingFile);
  tradeoff_cmd->add_option("--strategy", tradeoff_args.strategies, "Strategy (repeatable)")
      ->check(kStrategyName);
  tradeoff_cmd->add_option("--charset", tradeoff_args.charset, "Permitted characters");
  tradeoff_cmd->add_option("--snake-budget", tradeoff_args.snake_budget, "Path budget per snake word");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the authentication service");
  serve_cmd->add_option("--listen", serve_args.listen, "HOST:PORT")->envname("SPARTAN_LISTEN");
  serve_cmd->add_option("--store", serve_args.store, "Credential file")->envname("SPARTAN_STORE");
  serve_cmd->add_option("--grid", serve_args.grid, "Grid dimensions")->check(kDims)->envname("SPARTAN_GRID");
  serve_cmd->add_option("--palette", serve_args.palette, "Colors per grid")->check(CLI::Range(1, 255));
  serve_cmd->add_option("--kdf-profile", serve_args.kdf_profile, "interactive or test")
      ->check(CLI::IsMember({"interactive", "test"}))
      ->envname("SPARTAN_KDF_PROFILE");
  serve_cmd->add_option("--static", serve_args.static_dir, "Directory served at /")
      ->check(CLI::ExistingDirectory);

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand("encode", "Convert between placement encodings");
  encode_cmd->add_option("--grid", encode_args.grid, "Grid dimensions")->check(kDims);
  encode_cmd->add_option("--charset", encode_args.charset, "Permitted characters");
  encode_cmd->add_option("--tagged", encode_args.tagged, "Tagged form");
  encode_cmd->add_option("--canonical", encode_args.canonical, "Canonical form");
  encode_cmd->add_option("--text", encode_args.text, "Text typed from --start along --direction");
  encode_cmd->add_option("--start", encode_args.start, "ROW,COL (0-based)");
  encode_cmd->add_option("--direction", encode_args.direction, "N, NE, E, SE, S, SW, W or NW");
  encode_cmd->add_option("--salt", encode_args.salt, "Base64 salt; adds the hash to the output");
  encode_cmd->add_option("--kdf-profile", encode_args.kdf_profile, "interactive or test")
      ->check(CLI::IsMember({"interactive", "test"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a placement against a stored credential");
  verify_cmd->add_option("--store", verify_args.store, "Credential file")
      ->envname("SPARTAN_STORE")
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--username", verify_args.username, "User")->required();
  verify_cmd->add_option("--tagged", verify_args.tagged, "Tagged placement")->required();
  verify_cmd->add_option("--charset", verify_args.charset, "Permitted characters");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (json_errors) {
      report_error(err, true, "UsageError", e.what());
    } else {
      err << "spartan: " << e.what() << "\n\n";
      const CLI::App* failing = &app;
      for (const auto* sub : app.get_subcommands()) failing = sub;
      err << failing->help();
    }
    return 2;
  }

  try {
    if (space_cmd->parsed()) return cmd_space(space, out);
    if (entropy_cmd->parsed()) return cmd_entropy(entropy, out);
    if (classify_cmd->parsed()) {
      if (classify_args.corpus.empty() && classify_args.tagged.empty()) {
        return report_error(err, json_errors, "InvalidArgument", "give --corpus or --tagged"), 2;
      }
      return cmd_classify(classify_args, out);
    }
    if (stats_cmd->parsed()) return cmd_stats(stats_args, out);
    if (crack_cmd->parsed()) return cmd_crack(crack_args, out, err);
    if (tradeoff_cmd->parsed()) return cmd_tradeoff(tradeoff_args, out);
    if (serve_cmd->parsed()) return cmd_serve(serve_args, err);
    if (encode_cmd->parsed()) return cmd_encode(encode_args, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out);
  } catch (const ParseError& e) {
    return report_error(err, json_errors, to_string(e.code()), e.what(), e.offset());
  } catch (const Error& e) {
    return report_error(err, json_errors, to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return report_error(err, json_errors, "Internal", e.what());
  }
  return 2;
}

}  // namespace spartan::cli
