// Command-line front end: compute, verify and batch.
//
// Exit codes: 0 success, 1 failed checks, 2 bad input, 3 resource cap,
// 4 internal consistency failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tinv/checks.hpp"
#include "tinv/report.hpp"

using namespace tinv;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kParse = 2, kCap = 3, kConsistency = 4 };

struct JobOptions {
  std::vector<std::string> fields{"q"};
  int ti = 4;
  std::uint64_t seed = 0;
  std::size_t cap = 0;
  bool csv = false;
  bool timings = false;
};

ReportOptions report_options(const JobOptions& j) {
  ReportOptions o;
  o.fields.clear();
  for (const auto& f : j.fields) o.fields.push_back(field_by_name(f).name());
  o.i_max = j.ti;
  o.scan.seed = j.seed;
  o.scan.cap = j.cap ? j.cap : default_cap();
  return o;
}

// Maps an exception to an exit code and message.
std::pair<int, std::string> classify(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const ParseError& e) {
    return {kParse, e.what()};
  } catch (const UnsupportedDiagram& e) {
    return {kParse, e.what()};
  } catch (const ResourceCapExceeded& e) {
    return {kCap, e.what()};
  } catch (const ConsistencyError& e) {
    return {kConsistency, e.what()};
  } catch (const ArithmeticError& e) {
    return {kConsistency, e.what()};
  } catch (const std::invalid_argument& e) {
    return {kParse, e.what()};
  } catch (const std::exception& e) {
    return {kConsistency, e.what()};
  }
}

const char* kCsvHeader = "name,t_Q,t_F2,t_F3,T,sigma,gamma4_lb,g4_lb,error";

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_row(const InvariantReport& r) {
  std::ostringstream os;
  os << csv_quote(r.name);
  for (const char* f : {"Q", "F2", "F3"}) {
    os << ",";
    if (auto it = r.t.find(f); it != r.t.end()) os << it->second;
  }
  os << ",";
  for (std::size_t i = 0; i < r.T.size(); ++i) os << (i ? ";" : "") << r.T[i];
  os << "," << r.sigma << "," << r.gamma4_lb << ",";
  if (r.g4_lb) os << *r.g4_lb;
  os << ",";
  return os.str();
}

std::string csv_error(const std::string& name, const std::string& message) {
  return csv_quote(name) + ",,,,,,,," + csv_quote(message);
}

ordered_json json_error(const std::string& name, int code, const std::string& message) {
  ordered_json j;
  j["schema"] = 1;
  j["name"] = name;
  j["error"] = {{"code", code}, {"message", message}};
  return j;
}

int cmd_compute(const std::string& name, const std::string& format, const std::string& payload, int strands,
                const JobOptions& job) {
  try {
    auto d = parse_input(format, payload, strands);
    auto r = compute_report(d, report_options(job));
    r.name = name;
    if (job.csv) std::cout << kCsvHeader << "\n" << csv_row(r) << "\n";
    else std::cout << report_json(r, job.timings).dump() << "\n";
    return kOk;
  } catch (...) {
    auto [code, msg] = classify(std::current_exception());
    std::cerr << "error: " << msg << "\n";
    return code;
  }
}

int cmd_batch(const std::string& path, const JobOptions& job) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kParse;
  }
  ReportOptions opt;
  try {
    opt = report_options(job);
  } catch (...) {
    auto [code, msg] = classify(std::current_exception());
    std::cerr << "error: " << msg << "\n";
    return code;
  }
  bool header = false;
  std::string text;
  for (int line = 1; std::getline(in, text); ++line) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty() || text[0] == '#') continue;
    if (job.csv && !header) {
      std::cout << kCsvHeader << "\n";
      header = true;
    }
    std::string name = "line " + std::to_string(line);
    try {
      std::istringstream one(text);
      auto rows = read_table(one);
      name = rows.at(0).name;
      auto d = parse_input(rows[0].format, rows[0].payload);
      auto r = compute_report(d, opt);
      r.name = name;
      if (job.csv) std::cout << csv_row(r) << "\n";
      else std::cout << report_json(r, job.timings).dump() << "\n";
    } catch (...) {
      auto [code, msg] = classify(std::current_exception());
      if (job.csv) std::cout << csv_error(name, msg) << "\n";
      else std::cout << json_error(name, code, msg).dump() << "\n";
    }
    std::cout.flush();
  }
  return kOk;
}

void print_result(const CheckResult& r) {
  std::printf("%-34s %s  %d checks, %.2f s%s%s\n", r.name.c_str(), r.ok ? "PASS" : "FAIL", r.cases, r.seconds,
              r.note.empty() ? "" : ", ", r.note.c_str());
  for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

int cmd_verify(const std::string& suite, const std::string& table, const std::string& torus_table) {
  static const std::vector<std::string> kSuites = {"local", "deloop", "oracle", "alternating",
                                                   "torus", "ti",     "invariance", "parity"};
  std::vector<KnotRecord> knots, torus;
  if (suite == "whitehead") {
    auto r = whitehead_suite();
    print_result(r);
    return r.ok ? kOk : kChecksFailed;
  }
  bool need_knots = suite != "local" && suite != "deloop";
  try {
    if (need_knots) knots = load_knots(table);
    if (suite == "torus" || suite == "all") torus = load_knots(torus_table);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  ComplexCache cache;
  bool ok = true;
  for (const auto& s : kSuites) {
    if (suite != "all" && suite != s) continue;
    CheckResult r;
    try {
      if (s == "local") r = local_suite();
      else if (s == "deloop") r = delooping_suite();
      else if (s == "oracle") r = oracle_suite(knots, cache);
      else if (s == "alternating") r = alternating_suite(knots, cache);
      else if (s == "torus") r = torus_suite(torus, cache);
      else if (s == "ti") r = ti_suite(knots, cache);
      else if (s == "invariance") r = invariance_suite(knots, cache);
      else r = parity_suite(knots, cache);
    } catch (...) {
      auto [code, msg] = classify(std::current_exception());
      std::cerr << "error in suite " << s << ": " << msg << "\n";
      return code;
    }
    print_result(r);
    ok = ok && r.ok;
  }
  return ok ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concordance invariants t and T_i of knots from the E(-1) deformation of Khovanov homology"};
  app.require_subcommand(1);
  JobOptions job;
  auto add_job_flags = [&](CLI::App* sub) {
    sub->add_option("--field", job.fields, "Fields for t: q, f2, f3 (repeatable)")
        ->check(CLI::IsMember({"q", "f2", "f3", "Q", "F2", "F3"}));
    sub->add_option("--ti", job.ti, "Largest i for T_i; -1 skips T")->check(CLI::Range(-1, 32));
    sub->add_option("--seed", job.seed, "Seed recorded in the report");
    sub->add_option("--cap", job.cap, "Abort when the cube of resolutions exceeds this many generators");
    auto json = sub->add_flag("--json", "JSON output (default)");
    auto csv = sub->add_flag("--csv", job.csv, "CSV output");
    json->excludes(csv);
    sub->add_flag("--timings", job.timings, "Include wall-clock timings in JSON output");
  };

  auto compute = app.add_subcommand("compute", "Invariants of one diagram");
  std::string pd, braid, name = "K";
  int strands = 0;
  auto pd_opt = compute->add_option("--pd", pd, "PD code, e.g. PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
  auto braid_opt = compute->add_option("--braid", braid, "Braid word, e.g. \"1 -2 1 -2\"");
  pd_opt->excludes(braid_opt);
  compute->add_option("--strands", strands, "Strand count (default: largest generator + 1)");
  compute->add_option("--name", name, "Name recorded in the report");
  add_job_flags(compute);

  auto verify = app.add_subcommand("verify", "Run the self-check suites");
  std::string suite = "all";
  std::string table = data_dir() + "/knots.tsv", torus_table = data_dir() + "/torus.tsv";
  verify->add_option("--suite", suite, "Suite to run; whitehead is slow and not part of all")
      ->check(CLI::IsMember(
          {"all", "local", "deloop", "oracle", "alternating", "torus", "ti", "invariance", "parity", "whitehead"}));
  verify->add_option("--table", table, "Knot table");
  verify->add_option("--torus-table", torus_table, "Torus knot table");

  auto batch = app.add_subcommand("batch", "One report per line of a name<TAB>format<TAB>payload file");
  std::string batch_file;
  batch->add_option("file", batch_file, "Table file")->required();
  add_job_flags(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (*compute) {
    if (pd_opt->count() == 0 && braid_opt->count() == 0) {
      std::cerr << "error: compute needs --pd or --braid\n";
      return kParse;
    }
    return pd_opt->count() ? cmd_compute(name, "pd", pd, 0, job) : cmd_compute(name, "braid", braid, strands, job);
  }
  if (*verify) return cmd_verify(suite, table, torus_table);
  return cmd_batch(batch_file, job);
}
