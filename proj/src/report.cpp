#include "tinv/report.hpp"

#include <chrono>

#include "tinv/classical.hpp"

namespace tinv {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Coeff field_by_name(const std::string& name) {
  if (name == "Q" || name == "q") return Coeff::rationals();
  if (name == "F2" || name == "f2") return Coeff::prime_field(2);
  if (name == "F3" || name == "f3") return Coeff::prime_field(3);
  throw std::invalid_argument("unknown field '" + name + "'");
}

std::string check_T_sequence(const std::vector<int>& T) {
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::string at = "T_" + std::to_string(i) + " = " + std::to_string(T[i]);
    if (T[i] % 2 != 0) return at + " is odd";
    if (T[i] > 0) return at + " is positive";
    if (i > 0 && T[i] < T[i - 1]) return at + " is below T_" + std::to_string(i - 1);
  }
  return {};
}

InvariantReport compute_report(const Diagram& d, const ReportOptions& opt, ComplexPair* cache) {
  if (!d.is_knot()) throw UnsupportedDiagram("invariants are computed for knots only");
  ComplexPair local;
  ComplexPair& cp = cache ? *cache : local;
  InvariantReport r;
  r.input = d.to_pd();
  r.seed = opt.scan.seed;
  auto dd = decorate(d);

  auto t0 = std::chrono::steady_clock::now();
  if (!cp.reduced) {
    ScanOptions so = opt.scan;
    so.reduced = true;
    cp.reduced = scan(dd, so);
  }
  r.timings["scan"] = since(t0);

  t0 = std::chrono::steady_clock::now();
  for (const auto& f : opt.fields) {
    Coeff k = field_by_name(f);
    int t = t_invariant(*cp.reduced, k);
    int fast = t_fast(*cp.reduced, k);
    if (t != fast)
      throw ConsistencyError("t over " + k.name() + ": filtration sweep gives " + std::to_string(t) +
                             ", fast path gives " + std::to_string(fast));
    if (t % 2 != 0) throw ConsistencyError("t over " + k.name() + " is odd");
    r.t[k.name()] = t;
  }
  if (opt.e2) r.e2 = e2_poincare(*cp.reduced, Coeff::rationals());
  r.timings["t"] = since(t0);

  r.sigma = signature(d);
  if (!r.t.empty()) {
    auto q = r.t.find("Q");
    r.gamma4_lb = gamma4_lower((q != r.t.end() ? q : r.t.begin())->second, r.sigma);
  }

  if (opt.i_max >= 0) {
    t0 = std::chrono::steady_clock::now();
    if (!cp.unreduced) {
      ScanOptions so = opt.scan;
      so.reduced = false;
      cp.unreduced = scan(dd, so);
    }
    r.T = T_invariants(*cp.unreduced, opt.i_max);
    if (auto e = check_T_sequence(r.T); !e.empty()) throw ConsistencyError(e);
    if (r.T.back() == 0) r.g4_lb = g4_lower(r.T);
    r.timings["T"] = since(t0);
  }
  return r;
}

nlohmann::ordered_json report_json(const InvariantReport& r, bool with_timings) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["name"] = r.name;
  j["input"] = r.input;
  j["t"] = nlohmann::ordered_json::object();
  for (const char* f : {"Q", "F2", "F3"})
    if (auto it = r.t.find(f); it != r.t.end()) j["t"][f] = it->second;
  j["T"] = r.T;
  j["sigma"] = r.sigma;
  j["gamma4_lb"] = r.gamma4_lb;
  j["g4_lb"] = r.g4_lb ? nlohmann::ordered_json(*r.g4_lb) : nlohmann::ordered_json(nullptr);
  auto e2 = nlohmann::ordered_json::array();
  for (const auto& [qh, rank] : r.e2) e2.push_back({qh.first, qh.second, rank});
  j["e2_poincare"] = e2;
  if (with_timings) {
    j["timings"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.timings) j["timings"][k] = v;
  } else {
    j["timings"] = nullptr;
  }
  j["seed"] = r.seed;
  return j;
}

}  // namespace tinv
