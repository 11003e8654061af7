#include "zsigff/api.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <type_traits>

#include "zsigff/criterion.hpp"
#include "zsigff/field.hpp"
#include "zsigff/growth.hpp"
#include "zsigff/parse.hpp"
#include "zsigff/supersingular.hpp"

namespace zsigff::api {

namespace {

template <class Fn>
json with_field(long p, Fn&& fn) {
  if (p == 0) return fn(RationalField());
  if (p < 0) throw DomainError("characteristic must be 0 or an odd prime");
  return fn(PrimeField(static_cast<std::uint64_t>(p)));
}

template <class T>
T get_or(const json& in, const char* key, T fallback) {
  auto it = in.find(key);
  if (it == in.end() || it->is_null()) return fallback;
  return it->get<T>();
}

template <class T>
T require(const json& in, const char* key) {
  auto it = in.find(key);
  if (it == in.end() || it->is_null()) throw DomainError(std::string("missing input field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw DomainError(std::string("input field '") + key + "' has the wrong type");
  }
}

json rational(const mpq_class& q) {
  return json{{"value", q.get_str()}, {"decimal", criterion::decimal(q, 6)}};
}

std::uint64_t seed_of(const json& in) { return get_or<std::uint64_t>(in, "seed", kDefaultSeed); }

template <class F>
RatFunc<F> parse_labeled(const std::string& label, const std::string& text, const F& k) {
  try {
    return parse_ratfunc(text, k);
  } catch (const ParseError& e) {
    throw ParseError(label + ": " + e.message(), e.offset());
  }
}

template <class F>
Point<F> parse_point_labeled(const std::string& label, const std::string& text, const Curve<F>& E) {
  std::optional<std::pair<RatFunc<F>, RatFunc<F>>> c;
  try {
    c = parse_point_coords(text, E.field());
  } catch (const ParseError& e) {
    throw ParseError(label + ": " + e.message(), e.offset());
  }
  Point<F> R = c ? Point<F>::affine(c->first, c->second) : Point<F>::zero();
  if (!on_curve(E, R)) throw DomainError(label + " = " + text + " is not on the curve");
  return R;
}

template <class F>
Curve<F> parse_curve(const json& in, const F& k) {
  return Curve<F>(parse_labeled("A", require<std::string>(in, "A"), k),
                  parse_labeled("B", require<std::string>(in, "B"), k), seed_of(in));
}

template <class F>
Place<F> parse_place(const std::string& text, const F& k) {
  if (text == "inf") return Place<F>::infinity();
  RatFunc<F> f = parse_labeled("place", text, k);
  if (!f.is_polynomial() || f.num().degree() < 1)
    throw DomainError("place must be 'inf' or a nonconstant polynomial");
  Poly<F> g = f.num().monic();
  if constexpr (F::is_finite) {
    if (!is_irreducible(g)) throw DomainError("place polynomial " + g.to_string() + " is reducible");
  } else {
    if (!(squarefree_part(g) == g)) throw DomainError("place polynomial must be squarefree");
  }
  return Place<F>::finite(g);
}

std::string status_name(TorsionStatus s) {
  switch (s) {
    case TorsionStatus::torsion: return "torsion";
    case TorsionStatus::non_torsion: return "non_torsion";
    default: return "inconclusive";
  }
}

json torsion_json(const TorsionResult& t) {
  return json{{"status", status_name(t.status)},
              {"order", t.order ? json(*t.order) : json(nullptr)},
              {"note", t.note}};
}

template <class F>
json record_json(const ScanRecord<F>& r) {
  return json{{"n", r.n},
              {"point_is_zero", r.point_is_zero},
              {"degree", r.degree},
              {"support", r.support_places},
              {"new_support", r.new_places},
              {"has_primitive", r.has_primitive}};
}

// ---------------------------------------------------------------------------

json run_curve(const json& in) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    json r;
    r["discriminant"] = E.discriminant().to_string();
    r["j"] = j_invariant(E).to_string();
    r["constant_j"] = E.has_constant_j();
    r["warnings"] = E.warnings();
    json bad = json::array();
    for (const auto& [pl, m] : E.nonminimal_places()) bad.push_back({{"place", pl.to_string()}, {"defect", m}});
    r["nonminimal_places"] = bad;
    r["defect_at_infinity"] = E.defect_at_infinity();
    r["ordinary"] = is_ordinary(E);
    if constexpr (F::is_finite) {
      RatFunc<F> H = hasse_invariant(E);
      r["hasse_invariant"] = H.to_string();
      if (!H.is_zero()) {
        json lo = json::array();
        for (const auto& [pl, h] : hasse_data(E).local_orders) lo.push_back({{"place", pl.to_string()}, {"h", h}});
        r["local_hasse_orders"] = lo;
      }
    }
    for (const char* key : {"P", "Q"}) {
      std::string text = get_or<std::string>(in, key, "");
      if (text.empty()) continue;
      Point<F> R = parse_point_labeled(key, text, E);
      r[key] = {{"point", R.to_string()}, {"naive_height", naive_height(R)}, {"torsion", torsion_json(is_torsion(E, R))}};
    }
    return json{{"result", r}, {"passed", true}};
  });
}

json run_seq(const json& in, const RunOptions& opt) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    Point<F> P = parse_point_labeled("P", require<std::string>(in, "P"), E);
    Point<F> Q = parse_point_labeled("Q", get_or<std::string>(in, "Q", "O"), E);
    const long n_max = require<long>(in, "n_max");
    const DivisorMode mode = E.characteristic() == 3 ? DivisorMode::support_only : DivisorMode::exact;
    auto pts = multiples(E, P, n_max, Q);
    std::vector<std::optional<EffDivisor<F>>> divs(pts.size());
    parallel_for(pts.size(), opt.jobs, [&](std::size_t i) {
      if (!pts[i].is_zero()) divs[i] = divisor_of_point(E, pts[i], mode);
    });
    json rows = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      json row{{"n", static_cast<long>(i + 1)},
               {"point", pts[i].to_string()},
               {"naive_height", naive_height(pts[i])}};
      if (divs[i]) {
        row["divisor"] = divs[i]->to_string();
        row["degree"] = divs[i]->degree();
      } else {
        row["divisor"] = nullptr;
        row["degree"] = 0;
      }
      rows.push_back(row);
    }
    return json{{"result", {{"rows", rows}, {"support_only", mode == DivisorMode::support_only}}},
                {"passed", true}};
  });
}

json run_zsigmondy(const json& in, const RunOptions& opt) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    Point<F> P = parse_point_labeled("P", require<std::string>(in, "P"), E);
    Point<F> Q = parse_point_labeled("Q", get_or<std::string>(in, "Q", "O"), E);
    ScanOptions so;
    so.n_max = require<long>(in, "n_max");
    so.jobs = opt.jobs;
    so.progress = opt.progress;
    auto scan = zsigmondy_scan(E, P, Q, so);
    json recs = json::array();
    for (const auto& r : scan.records) recs.push_back(record_json(r));
    json res{{"records", recs},
             {"last_nonprimitive", scan.last_nonprimitive ? json(*scan.last_nonprimitive) : json(nullptr)},
             {"q_order", scan.q_order},
             {"support_only", scan.mode == DivisorMode::support_only},
             {"warnings", scan.warnings}};
    bool passed = true;
    if (get_or<bool>(in, "check_coverage", false)) {
      if (opt.progress) opt.progress("checking non-primitive indices against multiples of P");
      json entries = json::array();
      for (const auto& e : nonprimitive_coverage(E, P, Q, scan.q_order, scan, get_or<long>(in, "coverage_limit", 30))) {
        entries.push_back({{"n", e.n}, {"outside_s", e.outside_s}, {"uncovered", e.uncovered}, {"d", e.admissible_d}, {"ok", e.ok()}});
        passed = passed && e.ok();
      }
      res["coverage"] = entries;
    }
    return json{{"result", res}, {"passed", passed}};
  });
}

json run_divisibility(const json& in, const RunOptions& opt) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    Point<F> P = parse_point_labeled("P", require<std::string>(in, "P"), E);
    auto v = divisibility_check(E, P, require<long>(in, "n_max"), opt.jobs);
    json viol = json::array();
    for (const auto& x : v)
      viol.push_back({{"m", x.m}, {"n", x.n}, {"place", x.place}, {"ord_m", x.ord_m}, {"ord_n", x.ord_n}});
    return json{{"result", {{"violations", viol}}}, {"passed", v.empty()}};
  });
}

json run_growth(const json& in, const RunOptions&) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    Point<F> P = parse_point_labeled("P", require<std::string>(in, "P"), E);
    Place<F> v = parse_place(require<std::string>(in, "place"), k);
    GrowthOptions go;
    go.n_max = require<long>(in, "n_max");
    go.indices = get_or<std::vector<long>>(in, "indices", {});
    go.height_budget = get_or<long>(in, "height_budget", go.height_budget);
    auto rep = growth_law_verify(E, P, v, go);
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"n", r.n},
                      {"branch", r.branch},
                      {"expected", r.expected ? json(*r.expected) : json(nullptr)},
                      {"actual", r.actual},
                      {"match", r.match}});
    json res{{"place", v.to_string()},
             {"m", rep.m},
             {"h", rep.h ? json(*rep.h) : json(nullptr)},
             {"rows", rows},
             {"skipped", rep.skipped},
             {"mismatches", rep.mismatches()}};
    if (rep.delta) {
      json obs = json::object();
      for (const auto& [e, d] : rep.delta->observed) obs[std::to_string(e)] = d;
      res["delta"] = {{"base_index", rep.delta->base_index}, {"observed", obs}, {"j_observed", rep.delta->j_observed}};
    } else {
      res["delta"] = nullptr;
    }
    return json{{"result", res}, {"passed", rep.mismatches() == 0}};
  });
}

json run_heights(const json& in, const RunOptions& opt) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    Curve<F> E = parse_curve(in, k);
    Point<F> P = parse_point_labeled("P", require<std::string>(in, "P"), E);
    const long n_max = require<long>(in, "n_max");
    auto gaps = height_gap_profile(E, P, n_max, Point<F>::zero(), opt.jobs);
    json g = json::array();
    for (const auto& r : gaps)
      g.push_back({{"n", r.n}, {"naive", r.naive}, {"twice_degree", r.twice_degree}, {"gap", r.gap}});
    const long arg = gap_argmax(gaps);
    const bool bounded = arg <= n_max / 2;
    auto est = canonical_height_estimate(E, P, n_max, opt.jobs);
    json trace = json::array();
    for (const auto& [n, v] : est.trace) trace.push_back({{"n", n}, {"ratio", rational(v)}});
    json res{{"gap", g},
             {"gap_argmax", arg},
             {"gap_bounded", bounded},
             {"canonical",
              {{"estimate", rational(est.estimate)},
               {"C", rational(est.C)},
               {"fit_limit", est.fit_limit},
               {"validate_limit", est.validate_limit},
               {"violations", est.violations},
               {"trace", trace}}}};
    return json{{"result", res}, {"passed", bounded && est.validated()}};
  });
}

json run_criterion_table(const json& in) {
  auto primes = require<std::vector<long>>(in, "p_list");
  const long r_max = require<long>(in, "r_max");
  json rows = json::array();
  bool passed = true;
  for (const auto& row : criterion::admissibility_table(primes, r_max)) {
    json adm = json::array();
    bool match = true;
    for (long r = 2; r <= r_max; ++r) {
      bool a = row.admissible[static_cast<std::size_t>(r - 2)];
      adm.push_back(a);
      match = match && a == reference_admissible(row.p, r);
    }
    passed = passed && match;
    rows.push_back({{"p", row.p}, {"summary", row.summary}, {"admissible", adm}, {"matches_reference", match}});
  }
  return json{{"result", {{"r_min", 2}, {"r_max", r_max}, {"rows", rows}}}, {"passed", passed}};
}

json run_criterion_sum(const json& in) {
  const long n = require<long>(in, "n"), p = require<long>(in, "p"), r = require<long>(in, "r");
  mpq_class s = criterion::s_sum(n, p, r);
  json res{{"divisor_set", criterion::divisor_set(n, r)}, {"sum", rational(s)}};
  bool passed = true;
  if (p != 2 && p != 3) {
    auto e = criterion::closed_bound(p, r);
    res["closed_bound"] = {{"lower", rational(e.lower)},
                           {"upper", rational(e.upper)},
                           {"midpoint", criterion::decimal(e.midpoint(), 6)},
                           {"below_half", e.below(mpq_class(1, 2))}};
    passed = s <= e.upper;
    res["dominated"] = passed;
  }
  return json{{"result", res}, {"passed", passed}};
}

json run_demo(const json& in) {
  const long p = require<long>(in, "p");
  auto d = make_demo(static_cast<std::uint64_t>(p));
  auto rep = failure_demonstration(d, require<long>(in, "l_max"));
  json checks = json::array();
  for (const auto& [name, ok] : rep.frobenius_checks) checks.push_back({{"point", name}, {"ok", ok}});
  json levels = json::array();
  for (const auto& lv : rep.levels)
    levels.push_back({{"l", lv.l},
                      {"index", lv.index},
                      {"support", lv.support},
                      {"contained", lv.contained},
                      {"has_primitive", lv.has_primitive},
                      {"route", lv.route},
                      {"routes_agree", lv.routes_agree}});
  json res{{"p", rep.p},
           {"alpha", rep.alpha},
           {"beta", rep.beta},
           {"s", rep.s},
           {"P", rep.P},
           {"Q", rep.Q},
           {"x_P_plus_Q", rep.x_PQ},
           {"fixed_set", rep.fixed_set},
           {"constant_model_ordinary", rep.constant_ordinary},
           {"warnings", rep.warnings},
           {"P_non_torsion", rep.P_non_torsion},
           {"P_torsion_note", rep.P_torsion_note},
           {"frobenius_checks", checks},
           {"levels", levels}};
  return json{{"result", res}, {"passed", rep.ok()}};
}

json run_factor(const json& in) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    using F = std::decay_t<decltype(k)>;
    RatFunc<F> f = parse_labeled("f", require<std::string>(in, "f"), k);
    if (!f.is_polynomial() || f.is_zero()) throw DomainError("f must be a nonzero polynomial");
    auto list = [](const FactorList<F>& fl) {
      json out = json::array();
      for (const auto& [g, e] : fl) out.push_back({{"factor", g.to_string()}, {"multiplicity", e}});
      return out;
    };
    json res{{"squarefree", list(squarefree_decompose(f.num()))}};
    if constexpr (F::is_finite) res["irreducible"] = list(factor_irreducible(f.num(), seed_of(in)));
    return json{{"result", res}, {"passed", true}};
  });
}

json run_valuation(const json& in) {
  return with_field(require<long>(in, "p"), [&](const auto& k) -> json {
    Place<std::decay_t<decltype(k)>> v = parse_place(require<std::string>(in, "place"), k);
    auto f = parse_labeled("f", require<std::string>(in, "f"), k);
    auto val = valuation(v, f);
    return json{{"result", {{"valuation", val ? json(*val) : json("inf")}}}, {"passed", true}};
  });
}

}  // namespace

std::vector<std::string> kinds() {
  return {"curve", "seq", "zsigmondy", "divisibility", "growth", "heights",
          "criterion_table", "criterion_sum", "demo_supersingular", "factor", "valuation"};
}

bool reference_admissible(long p, long r) {
  if (p == 2 || p == 3) return false;
  if (r == 1) return true;
  switch (p) {
    case 0: return r >= 2;
    case 5: return r == 5 || r >= 10;
    case 7: return r >= 4;
    case 11:
    case 13: return r >= 3;
    default: return r >= 2;
  }
}

json run(const std::string& kind, const json& input, const RunOptions& opt) {
  json out;
  if (kind == "curve") out = run_curve(input);
  else if (kind == "seq") out = run_seq(input, opt);
  else if (kind == "zsigmondy") out = run_zsigmondy(input, opt);
  else if (kind == "divisibility") out = run_divisibility(input, opt);
  else if (kind == "growth") out = run_growth(input, opt);
  else if (kind == "heights") out = run_heights(input, opt);
  else if (kind == "criterion_table") out = run_criterion_table(input);
  else if (kind == "criterion_sum") out = run_criterion_sum(input);
  else if (kind == "demo_supersingular") out = run_demo(input);
  else if (kind == "factor") out = run_factor(input);
  else if (kind == "valuation") out = run_valuation(input);
  else throw DomainError("unknown kind '" + kind + "'");
  out["kind"] = kind;
  out["input"] = input;
  return out;
}

json verify(const json& report, const RunOptions& opt) {
  if (!report.is_object() || !report.contains("kind") || !report.contains("input"))
    throw DomainError("not a report: expected an object with 'kind' and 'input'");
  const std::string kind = report.at("kind").get<std::string>();
  json fresh = run(kind, report.at("input"), opt);
  json diffs = json::array();
  const json& old_res = report.contains("result") ? report.at("result") : json(nullptr);
  const json& new_res = fresh.at("result");
  if (!old_res.is_object()) {
    diffs.push_back("result");
  } else {
    for (auto it = new_res.begin(); it != new_res.end(); ++it)
      if (!old_res.contains(it.key()) || old_res.at(it.key()) != it.value()) diffs.push_back(it.key());
    for (auto it = old_res.begin(); it != old_res.end(); ++it)
      if (!new_res.contains(it.key())) diffs.push_back(it.key());
  }
  if (report.value("passed", true) != fresh.at("passed").get<bool>()) diffs.push_back("passed");
  return json{{"kind", kind},
              {"ok", diffs.empty()},
              {"passed", fresh.at("passed")},
              {"differences", diffs}};
}

}  // namespace zsigff::api
