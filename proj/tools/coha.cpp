// coha: exact shuffle-algebra products, quiver-with-potential calculus, and
// the identity-verification suites, behind one command-line front door.
//
// Exit codes: 0 success (or informational), 1 generic/check failure,
// 2 parse or file-format error, 3 symmetry violation, 4 residual denominator,
// 5 name clash on quiver extension.
//
// Output is fully buffered: nothing is printed until a command has finished,
// so error paths never leave partial output behind.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <coha/coha.hpp>

namespace fs = std::filesystem;

namespace {

using namespace coha;

struct Session {
  std::string quiver;
  std::string fgl = "additive";
  std::string loop_weight = "-1,-1";
  std::uint64_t seed = 1;
  std::string format = "text";
  bool timings = false;
};

void add_common(CLI::App* sub, Session& s, bool with_quiver = true) {
  if (with_quiver)
    sub->add_option("--quiver", s.quiver, "quiver file path or built-in name");
  sub->add_option("--fgl", s.fgl, "formal group law name (default: additive)");
  sub->add_option("--loop-weight", s.loop_weight,
                  "torus weight pair c1,c2 (default: -1,-1)");
  sub->add_option("--seed", s.seed, "seed for randomized checks");
  sub->add_option("--format", s.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--timings", s.timings, "include wall-clock times in reports");
}

std::string resolve_quiver_path(const std::string& arg) {
  if (arg.empty()) throw QuiverFormatError("no quiver file given (use --quiver)");
  if (fs::exists(arg)) return arg;
  std::string name = arg;
  if (!name.ends_with(".json")) name += ".json";
  if (fs::exists(name)) return name;
  if (const char* dir = std::getenv("COHA_QUIVER_DIR")) {
    fs::path p = fs::path(dir) / name;
    if (fs::exists(p)) return p.string();
  }
  fs::path p = fs::path(COHA_DATA_DIR) / name;
  if (fs::exists(p)) return p.string();
  throw QuiverFormatError("cannot find quiver file: " + arg);
}

std::string quiver_stem(const std::string& path) { return fs::path(path).stem().string(); }

DimVector parse_dims(const Quiver& q, const std::string& text, const char* flag) {
  std::vector<int> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      int n = std::stoi(item, &used);
      if (used != item.size() || n < 0) throw std::invalid_argument(item);
      vals.push_back(n);
    } catch (const std::exception&) {
      throw ParseError(std::string(flag) + ": bad dimension entry '" + item + "'", pos);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (vals.size() != q.vertices().size())
    throw ParseError(std::string(flag) + ": got " + std::to_string(vals.size()) +
                         " entries for a quiver with " +
                         std::to_string(q.vertices().size()) + " vertices",
                     0);
  DimVector v;
  for (std::size_t i = 0; i < vals.size(); ++i)
    v.set(q.vertices()[i], vals[i]);
  return v;
}

LoopWeight parse_loop_weight(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw ParseError("--loop-weight wants two integers c1,c2", 0);
  try {
    std::size_t u1 = 0, u2 = 0;
    std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    int c1 = std::stoi(a, &u1), c2 = std::stoi(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
    return LoopWeight{c1, c2};
  } catch (const std::exception&) {
    throw ParseError("--loop-weight: bad integer pair '" + text + "'", 0);
  }
}

// --- mul ---------------------------------------------------------------------

int cmd_mul(const Session& s, const std::string& product, const std::string& v1_text,
            const std::string& v2_text, const std::string& expr1,
            const std::string& expr2) {
  QuiverFile file = load_quiver_file(resolve_quiver_path(s.quiver));
  const Quiver dbl = as_double(file.quiver);
  const FormalGroupLaw F = FormalGroupLaw::from_name(s.fgl);
  const LoopWeight w = parse_loop_weight(s.loop_weight);

  DimVector v1 = parse_dims(file.quiver, v1_text, "--v1");
  DimVector v2 = parse_dims(file.quiver, v2_text, "--v2");
  const Flavor flavor = product == "sign" ? Flavor::skew : Flavor::symmetric;

  ShuffleElement x{v1, parse_expression(expr1), flavor};
  ShuffleElement y{v2, parse_expression(expr2), flavor};
  try {
    validate_element(x);
    validate_element(y);
  } catch (const std::domain_error& e) {
    throw SymmetryError(e.what());  // slot outside the dimension vector
  }

  ShuffleElement result = [&] {
    if (product == "prepr") return mul_preprojective(x, y, dbl, F);
    if (product == "aux") return mul_aux(x, y, dbl, F, w);
    if (product == "crit") return mul_critical(x, y, dbl, F);
    if (product == "sign") return mul_sign_twisted(x, y, dbl, F);
    throw std::invalid_argument("unknown product: " + product);
  }();

  std::ostringstream out;
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["product"] = product;
    j["quiver"] = quiver_stem(s.quiver);
    j["v1"] = v1.str();
    j["v2"] = v2.str();
    j["degree"] = result.v.str();
    j["flavor"] = result.flavor == Flavor::skew ? "skew" : "symmetric";
    j["value"] = result.f.str();
    out << j.dump(2) << "\n";
  } else {
    out << result.f.str() << "\n";
    out << "degree: " << result.v.str() << "\n";
  }
  std::cout << out.str();
  return 0;
}

// --- extend ------------------------------------------------------------------

int cmd_extend(const Session& s, const std::string& mode) {
  QuiverFile file = load_quiver_file(resolve_quiver_path(s.quiver));
  ExtendedQuiver ext;
  if (mode == "ginzburg")
    ext = ginzburg_extend(file.quiver);
  else if (mode == "framed")
    ext = framed_extend(file.quiver);
  else
    throw std::invalid_argument("extend mode must be ginzburg or framed");
  std::cout << save_quiver_string({ext.quiver, ext.potential, ext.cut});
  return 0;
}

// --- derive ------------------------------------------------------------------

int cmd_derive(const Session& s, const std::string& arrow) {
  QuiverFile file = load_quiver_file(resolve_quiver_path(s.quiver));
  std::vector<std::string> names;
  if (!arrow.empty()) {
    file.quiver.arrow(arrow);  // must exist
    names.push_back(arrow);
  } else {
    for (const auto& a : file.quiver.arrows()) names.push_back(a.name);
  }
  std::ostringstream out;
  if (s.format == "json") {
    nlohmann::ordered_json j;
    for (const auto& name : names)
      j[name] = cyclic_derivative(file.quiver, file.potential, name).str();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& name : names)
      out << "d/d" << name << ": "
          << cyclic_derivative(file.quiver, file.potential, name).str() << "\n";
  }
  std::cout << out.str();
  return 0;
}

// --- cut-check ---------------------------------------------------------------

int cmd_cut_check(const Session& s) {
  QuiverFile file = load_quiver_file(resolve_quiver_path(s.quiver));
  CutReport cr = validate_cut(file.quiver, file.potential, file.cut);
  std::ostringstream out;
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["is_cut"] = cr.is_cut;
    j["loop_assumption"] = cr.satisfies_loop_assumption;
    j["violations"] = cr.violations;
    out << j.dump(2) << "\n";
  } else {
    out << "is_cut: " << (cr.is_cut ? "true" : "false") << "\n";
    out << "loop_assumption: " << (cr.satisfies_loop_assumption ? "true" : "false")
        << "\n";
    for (const auto& v : cr.violations) out << "violation: " << v << "\n";
  }
  std::cout << out.str();
  return 0;
}

// --- verify ------------------------------------------------------------------

const std::set<std::string> kSuiteNames = {"assoc",  "xi-crit", "xi-sign", "serre",
                                           "euler",  "cut",     "gradient"};

int emit_reports(const Session& s, const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  if (s.format == "json") {
    out << reports_json(reports, s.timings).dump(2) << "\n";
  } else {
    for (const auto& r : reports) out << report_text(r, s.timings) << "\n";
  }
  std::cout << out.str();
  for (const auto& r : reports)
    if (!r.pass) return 1;
  return 0;
}

int cmd_verify(const Session& s, const std::vector<std::string>& suites, int bound,
               int samples, int xi_samples, int cut_quivers, int trials) {
  std::set<std::string> which(suites.begin(), suites.end());
  for (const auto& name : which)
    if (!kSuiteNames.count(name))
      throw std::invalid_argument("unknown suite: " + name);

  if (!s.quiver.empty()) {
    if (!(which == std::set<std::string>{"cut"}))
      throw std::invalid_argument(
          "verify --quiver applies to the cut suite only (use --suite cut)");
    std::string path = resolve_quiver_path(s.quiver);
    QuiverFile file = load_quiver_file(path);
    VerificationReport r =
        check_cut(file.quiver, file.potential, file.cut, quiver_stem(path));
    return emit_reports(s, {r});
  }

  SuiteOptions opt;
  opt.seed = s.seed;
  opt.suites = which;
  if (bound > 0) {
    opt.assoc_bound = bound;
    opt.xi_bound = bound;
    opt.euler_bound = bound;
  }
  if (samples > 0) opt.assoc_samples = samples;
  if (xi_samples > 0) opt.xi_samples = xi_samples;
  if (cut_quivers > 0) opt.cut_quivers = cut_quivers;
  if (trials > 0) opt.gradient_trials = trials;
  return emit_reports(s, run_suite(opt));
}

// --- report ------------------------------------------------------------------

std::string suite_of(const std::string& check) {
  if (check.rfind("assoc-", 0) == 0) return "assoc";
  if (check.rfind("cut-", 0) == 0) return "cut";
  if (kSuiteNames.count(check)) return check;
  return "";
}

int cmd_report(const Session&, const std::string& path, bool replay) {
  std::ifstream in(path);
  if (!in) throw QuiverFormatError("cannot open report file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report file is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_array()) throw ParseError("report file must hold a JSON array", 0);

  struct Record {
    std::string check, quiver, status;
    std::uint64_t seed = 0;
  };
  std::vector<Record> records;
  std::ostringstream out;
  try {
    for (const auto& item : j) {
      Record rec{item.at("check").get<std::string>(),
                 item.at("quiver").get<std::string>(),
                 item.at("status").get<std::string>(),
                 item.at("seed").get<std::uint64_t>()};
      out << (rec.status == "pass" ? "PASS " : "FAIL ") << rec.check
          << " quiver=" << rec.quiver << " samples=" << item.at("samples").get<long long>()
          << " seed=" << rec.seed << "\n";
      if (item.contains("notes"))
        for (const auto& n : item.at("notes"))
          out << "  note: " << n.get<std::string>() << "\n";
      if (item.contains("counterexample")) {
        const auto& c = item.at("counterexample");
        for (const auto& [k, v] : c.at("inputs").items())
          out << "  " << k << " = " << v.get<std::string>() << "\n";
        out << "  lhs = " << c.at("lhs").get<std::string>() << "\n";
        out << "  rhs = " << c.at("rhs").get<std::string>() << "\n";
      }
      records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report record: ") + e.what(), 0);
  }

  int rc = 0;
  if (replay) {
    std::map<std::uint64_t, std::set<std::string>> groups;
    for (const auto& rec : records) {
      std::string suite = suite_of(rec.check);
      if (!suite.empty()) groups[rec.seed].insert(suite);
    }
    std::map<std::pair<std::string, std::string>, bool> fresh;
    for (const auto& [seed, suites] : groups) {
      SuiteOptions opt;
      opt.seed = seed;
      opt.suites = suites;
      for (const auto& r : run_suite(opt)) fresh[{r.check, r.quiver_id}] = r.pass;
    }
    for (const auto& rec : records) {
      auto it = fresh.find({rec.check, rec.quiver});
      if (it == fresh.end()) {
        out << "REPLAY " << rec.check << " quiver=" << rec.quiver
            << ": not replayable (skipped)\n";
        continue;
      }
      bool was_pass = rec.status == "pass";
      if (it->second == was_pass) {
        out << "REPLAY " << rec.check << " quiver=" << rec.quiver << ": reproduced\n";
      } else {
        out << "REPLAY " << rec.check << " quiver=" << rec.quiver
            << ": STATUS MISMATCH\n";
        rc = 1;
      }
    }
  }
  std::cout << out.str();
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact shuffle-algebra and quiver-with-potential calculator"};
  app.require_subcommand(1);

  Session s;

  std::string product = "prepr", v1_text, v2_text, expr1, expr2;
  CLI::App* mul = app.add_subcommand("mul", "multiply two shuffle elements");
  add_common(mul, s);
  mul->add_option("--product", product, "prepr, aux, crit, or sign")
      ->check(CLI::IsMember({"prepr", "aux", "crit", "sign"}));
  mul->add_option("--v1", v1_text, "first degree, comma-separated per vertex")
      ->required();
  mul->add_option("--v2", v2_text, "second degree, comma-separated per vertex")
      ->required();
  mul->add_option("expr1", expr1, "first factor")->required();
  mul->add_option("expr2", expr2, "second factor")->required();

  std::string extend_mode;
  CLI::App* extend = app.add_subcommand("extend", "emit an extended quiver file");
  add_common(extend, s);
  extend->add_option("mode", extend_mode, "ginzburg or framed")->required();

  std::string arrow;
  CLI::App* derive = app.add_subcommand("derive", "cyclic derivatives of the potential");
  add_common(derive, s);
  derive->add_option("--arrow", arrow, "derive by this arrow only");

  CLI::App* cut = app.add_subcommand("cut-check", "validate the quiver file's cut");
  add_common(cut, s);

  std::vector<std::string> suites;
  int bound = 0, samples = 0, xi_samples = 0, cut_quivers = 0, trials = 0;
  CLI::App* verify = app.add_subcommand("verify", "run identity-check suites");
  add_common(verify, s);
  verify->add_option("--suite", suites,
                     "suites to run (assoc, xi-crit, xi-sign, serre, euler, cut, "
                     "gradient); default: all");
  verify->add_option("--bound", bound, "degree bound for assoc/xi/euler sweeps");
  verify->add_option("--samples", samples, "random samples per associativity degree triple");
  verify->add_option("--xi-samples", xi_samples, "random samples for the xi checks");
  verify->add_option("--cut-quivers", cut_quivers, "random quivers for the cut suite");
  verify->add_option("--trials", trials, "trials for the gradient suite");

  std::string report_path;
  bool replay = false;
  CLI::App* report = app.add_subcommand("report", "pretty-print (and replay) reports");
  add_common(report, s, /*with_quiver=*/false);
  report->add_option("file", report_path, "JSON report file from verify")->required();
  report->add_flag("--replay", replay, "re-run the recorded checks and compare status");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(mul))
      return cmd_mul(s, product, v1_text, v2_text, expr1, expr2);
    if (app.got_subcommand(extend)) return cmd_extend(s, extend_mode);
    if (app.got_subcommand(derive)) return cmd_derive(s, arrow);
    if (app.got_subcommand(cut)) return cmd_cut_check(s);
    if (app.got_subcommand(verify))
      return cmd_verify(s, suites, bound, samples, xi_samples, cut_quivers, trials);
    if (app.got_subcommand(report)) return cmd_report(s, report_path, replay);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const QuiverFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SymmetryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ResidualDenominatorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NameClashError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
