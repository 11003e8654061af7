#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zsigff/api.hpp"
#include "zsigff/errors.hpp"

namespace {

using zsigff::api::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct CurveArgs {
  long p = 0;
  std::string A, B, P, Q = "O";
  std::uint64_t seed = 0x5eed2024ULL;
};

struct Common {
  std::string format = "text";
  unsigned jobs = 1;
  bool quiet = false;
};

void add_curve_options(CLI::App* sub, CurveArgs& c, bool need_point) {
  sub->add_option("--p", c.p, "characteristic: 0 or an odd prime")->required();
  sub->add_option("--A", c.A, "coefficient A(t)")->required();
  sub->add_option("--B", c.B, "coefficient B(t)")->required();
  auto* p = sub->add_option("--P", c.P, "point (x, y)");
  if (need_point) p->required();
  sub->add_option("--Q", c.Q, "torsion point (x, y) or O");
  sub->add_option("--seed", c.seed, "seed for randomized factorization");
}

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--jobs", c.jobs, "worker threads for per-index divisors")->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", c.quiet, "no progress on stderr");
}

json curve_input(const CurveArgs& c) {
  json in{{"p", c.p}, {"A", c.A}, {"B", c.B}, {"Q", c.Q}, {"seed", c.seed}};
  if (!c.P.empty()) in["P"] = c.P;
  return in;
}

std::string join(const json& arr, const std::string& sep) {
  std::string s;
  for (const auto& v : arr) {
    if (!s.empty()) s += sep;
    s += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string cell(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

void print_warnings(const json& res) {
  if (res.contains("warnings"))
    for (const auto& w : res.at("warnings")) std::cout << "# warning: " << w.get<std::string>() << "\n";
}

// ---------------------------------------------------------------------------
// text / csv / jsonl renderers

void render_seq(const json& rep, const std::string& fmt) {
  const json& rows = rep.at("result").at("rows");
  if (fmt == "jsonl") {
    for (const auto& r : rows) std::cout << r.dump() << "\n";
  } else if (fmt == "csv") {
    std::cout << "n,naive_height,degree,divisor,point\n";
    for (const auto& r : rows)
      std::cout << r.at("n") << "," << r.at("naive_height") << "," << r.at("degree") << ","
                << csv_field(cell(r.at("divisor"))) << "," << csv_field(r.at("point").get<std::string>()) << "\n";
  } else {
    if (rep.at("result").at("support_only").get<bool>()) std::cout << "# support-level multiplicities\n";
    for (const auto& r : rows)
      std::cout << "n=" << r.at("n") << "  h=" << r.at("naive_height") << "  deg D=" << r.at("degree")
                << "  D=" << cell(r.at("divisor")) << "\n";
  }
}

void render_zsigmondy(const json& rep, const std::string& fmt) {
  const json& res = rep.at("result");
  const json& recs = res.at("records");
  if (fmt == "jsonl") {
    for (const auto& r : recs) std::cout << r.dump() << "\n";
    return;
  }
  if (fmt == "csv") {
    std::cout << "n,point_is_zero,degree,support,new_support,has_primitive\n";
    for (const auto& r : recs)
      std::cout << r.at("n") << "," << (r.at("point_is_zero").get<bool>() ? 1 : 0) << "," << r.at("degree")
                << "," << csv_field(join(r.at("support"), ";")) << "," << csv_field(join(r.at("new_support"), ";"))
                << "," << (r.at("has_primitive").get<bool>() ? 1 : 0) << "\n";
    return;
  }
  print_warnings(res);
  std::cout << "order of Q: " << res.at("q_order") << "\n";
  std::cout << std::setw(4) << "n" << std::setw(8) << "deg" << "  prim  new support\n";
  for (const auto& r : recs)
    std::cout << std::setw(4) << cell(r.at("n")) << std::setw(8) << cell(r.at("degree")) << "  "
              << (r.at("has_primitive").get<bool>() ? "yes " : "no  ") << "  " << join(r.at("new_support"), ", ")
              << "\n";
  std::cout << "last index without a primitive divisor: " << cell(res.at("last_nonprimitive")) << "\n";
  if (res.contains("coverage")) {
    std::cout << "non-primitive indices covered by multiples of P:\n";
    for (const auto& e : res.at("coverage"))
      std::cout << "  n=" << e.at("n") << " outside S=" << e.at("outside_s") << " uncovered=" << e.at("uncovered")
                << " d in {" << join(e.at("d"), ",") << "} " << (e.at("ok").get<bool>() ? "ok" : "FAIL") << "\n";
  }
}

void render_growth(const json& rep, const std::string& fmt) {
  const json& res = rep.at("result");
  const json& rows = res.at("rows");
  if (fmt == "jsonl") {
    for (const auto& r : rows) std::cout << r.dump() << "\n";
    return;
  }
  if (fmt == "csv") {
    std::cout << "n,branch,expected,actual,match\n";
    for (const auto& r : rows)
      std::cout << r.at("n") << "," << r.at("branch").get<std::string>() << ","
                << (r.at("expected").is_null() ? "" : r.at("expected").dump()) << "," << r.at("actual") << ","
                << (r.at("match").get<bool>() ? 1 : 0) << "\n";
    return;
  }
  std::cout << "place " << res.at("place").get<std::string>() << ": m = " << res.at("m")
            << ", h = " << cell(res.at("h")) << "\n";
  std::cout << std::setw(6) << "n" << std::setw(8) << "branch" << std::setw(10) << "expected" << std::setw(8)
            << "actual" << "  match\n";
  for (const auto& r : rows)
    std::cout << std::setw(6) << cell(r.at("n")) << std::setw(8) << r.at("branch").get<std::string>() << std::setw(10)
              << cell(r.at("expected")) << std::setw(8) << cell(r.at("actual")) << "  " << cell(r.at("match")) << "\n";
  if (!res.at("skipped").empty()) std::cout << "skipped (height budget): " << join(res.at("skipped"), ", ") << "\n";
  if (!res.at("delta").is_null()) {
    const json& d = res.at("delta");
    std::cout << "delta profile (base " << d.at("base_index") << "):";
    for (auto it = d.at("observed").begin(); it != d.at("observed").end(); ++it)
      std::cout << " " << it.key() << "->" << it.value();
    std::cout << "; saturation index " << d.at("j_observed") << "\n";
  }
  std::cout << "mismatches: " << res.at("mismatches") << "\n";
}

void render_heights(const json& rep, const std::string& fmt) {
  const json& res = rep.at("result");
  const json& can = res.at("canonical");
  if (fmt == "csv") {
    std::cout << "n,naive,twice_degree,gap,ratio\n";
    const json& tr = can.at("trace");
    for (std::size_t i = 0; i < res.at("gap").size(); ++i) {
      const json& g = res.at("gap")[i];
      std::cout << g.at("n") << "," << g.at("naive") << "," << g.at("twice_degree") << "," << g.at("gap") << ","
                << tr[i].at("ratio").at("value").get<std::string>() << "\n";
    }
    return;
  }
  if (fmt == "jsonl") {
    for (const auto& g : res.at("gap")) std::cout << g.dump() << "\n";
    return;
  }
  std::cout << std::setw(4) << "n" << std::setw(8) << "h" << std::setw(8) << "2deg" << std::setw(6) << "gap"
            << "  deg/n^2\n";
  const json& tr = can.at("trace");
  for (std::size_t i = 0; i < res.at("gap").size(); ++i) {
    const json& g = res.at("gap")[i];
    std::cout << std::setw(4) << cell(g.at("n")) << std::setw(8) << cell(g.at("naive")) << std::setw(8) << cell(g.at("twice_degree"))
              << std::setw(6) << cell(g.at("gap")) << "  " << tr[i].at("ratio").at("decimal").get<std::string>() << "\n";
  }
  std::cout << "max |gap| first at n = " << res.at("gap_argmax") << (res.at("gap_bounded").get<bool>() ? " (bounded)" : " (NOT bounded)") << "\n";
  std::cout << "canonical height estimate " << can.at("estimate").at("decimal").get<std::string>() << ", C = "
            << can.at("C").at("decimal").get<std::string>() << " fitted on n <= " << can.at("fit_limit")
            << ", validated to n = " << can.at("validate_limit")
            << (can.at("violations").empty() ? "" : ", violations at " + join(can.at("violations"), ",")) << "\n";
}

void render_table(const json& rep, const std::string& fmt) {
  const json& res = rep.at("result");
  const long r_max = res.at("r_max").get<long>();
  if (fmt == "csv") {
    std::cout << "p";
    for (long r = 2; r <= r_max; ++r) std::cout << ",r" << r;
    std::cout << ",summary\n";
    for (const auto& row : res.at("rows")) {
      std::cout << row.at("p");
      for (const auto& a : row.at("admissible")) std::cout << "," << (a.get<bool>() ? 1 : 0);
      std::cout << "," << csv_field(row.at("summary").get<std::string>()) << "\n";
    }
    return;
  }
  std::cout << "Admissible pairs (p, r), r in [2, " << r_max << "]\n\n";
  std::cout << std::setw(5) << "p" << " |";
  for (long r = 2; r <= r_max; ++r) std::cout << std::setw(3) << r;
  std::cout << "\n" << std::string(7 + 3 * static_cast<std::size_t>(r_max - 1), '-') << "\n";
  for (const auto& row : res.at("rows")) {
    std::cout << std::setw(5) << cell(row.at("p")) << " |";
    for (const auto& a : row.at("admissible")) std::cout << std::setw(3) << (a.get<bool>() ? "+" : ".");
    std::cout << "\n";
  }
  std::cout << "\n" << std::setw(5) << "p" << "   r > 1 admissible\n";
  for (const auto& row : res.at("rows"))
    std::cout << std::setw(5) << cell(row.at("p")) << "   " << row.at("summary").get<std::string>()
              << (row.at("matches_reference").get<bool>() ? "" : "   MISMATCH") << "\n";
}

void render_sum(const json& rep) {
  const json& res = rep.at("result");
  std::cout << "D = {" << join(res.at("divisor_set"), ", ") << "}\n";
  std::cout << "sum = " << res.at("sum").at("value").get<std::string>() << " ~ "
            << res.at("sum").at("decimal").get<std::string>() << "\n";
  if (res.contains("closed_bound")) {
    const json& cb = res.at("closed_bound");
    std::cout << "closed bound ~ " << cb.at("midpoint").get<std::string>() << ", certified "
              << (cb.at("below_half").get<bool>() ? "< 1/2" : ">= 1/2") << "\n";
    std::cout << "sum <= closed bound: " << cell(res.at("dominated")) << "\n";
  }
}

void render_demo(const json& rep) {
  const json& res = rep.at("result");
  std::cout << "p = " << res.at("p") << ", (alpha, beta) = (" << res.at("alpha") << ", " << res.at("beta") << ")\n";
  std::cout << "s = " << res.at("s").get<std::string>() << "\n";
  std::cout << "P = " << res.at("P").get<std::string>() << "\n";
  std::cout << "Q = " << res.at("Q").get<std::string>() << "\n";
  std::cout << "x(P+Q) = " << res.at("x_P_plus_Q").get<std::string>() << "\n";
  print_warnings(res);
  std::cout << "constant model ordinary: " << cell(res.at("constant_model_ordinary")) << "\n";
  std::cout << "P non-torsion: " << cell(res.at("P_non_torsion")) << " (" << res.at("P_torsion_note").get<std::string>()
            << ")\n";
  for (const auto& c : res.at("frobenius_checks"))
    std::cout << "x([p]R) = s (x(R)/s)^(p^2) for R = " << c.at("point").get<std::string>() << ": "
              << cell(c.at("ok")) << "\n";
  std::cout << "F = {" << join(res.at("fixed_set"), ", ") << "}\n";
  for (const auto& lv : res.at("levels"))
    std::cout << "l=" << lv.at("l") << " n=" << lv.at("index") << " supp = {" << join(lv.at("support"), ", ")
              << "} contained in F: " << cell(lv.at("contained")) << ", primitive: " << cell(lv.at("has_primitive"))
              << " [" << lv.at("route").get<std::string>() << (lv.at("routes_agree").get<bool>() ? "" : ", ROUTES DISAGREE")
              << "]\n";
}

void render_curve(const json& rep) {
  const json& res = rep.at("result");
  for (auto it = res.begin(); it != res.end(); ++it) {
    if (it.value().is_object()) {
      std::cout << it.key() << ": " << it.value().at("point").get<std::string>() << ", torsion "
                << it.value().at("torsion").at("status").get<std::string>();
      if (!it.value().at("torsion").at("order").is_null()) std::cout << " of order " << it.value().at("torsion").at("order");
      std::cout << "\n";
    } else if (it.value().is_array()) {
      std::cout << it.key() << ":";
      for (const auto& v : it.value()) std::cout << " " << (v.is_object() ? v.dump() : cell(v));
      std::cout << "\n";
    } else {
      std::cout << it.key() << ": " << cell(it.value()) << "\n";
    }
  }
}

void render(const json& rep, const std::string& fmt) {
  if (fmt == "json") {
    std::cout << rep.dump(2) << "\n";
    return;
  }
  const std::string kind = rep.at("kind").get<std::string>();
  if (kind == "seq") render_seq(rep, fmt);
  else if (kind == "zsigmondy") render_zsigmondy(rep, fmt);
  else if (kind == "growth") render_growth(rep, fmt);
  else if (kind == "heights") render_heights(rep, fmt);
  else if (kind == "criterion_table") render_table(rep, fmt);
  else if (kind == "criterion_sum") render_sum(rep);
  else if (kind == "demo_supersingular") render_demo(rep);
  else if (kind == "curve") render_curve(rep);
  else if (kind == "divisibility") {
    const json& v = rep.at("result").at("violations");
    std::cout << "violations: " << v.size() << "\n";
    for (const auto& x : v) std::cout << "  " << x.dump() << "\n";
  } else {
    std::cout << rep.at("result").dump(2) << "\n";
  }
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long v = std::stol(item, &pos);
    if (pos != item.size()) throw zsigff::DomainError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisibility sequences on elliptic curves over F_p(t) and Q(t)"};
  app.require_subcommand(1);
  Common common;
  CurveArgs curve;
  long n_max = 20, l_max = 3, r_max = 24, height_budget = 20000, coverage_limit = 30;
  long n = 1, p = 0, r = 1;
  std::string place, indices, p_list = "0,5,7,11,13,17", report_path, expr;
  bool check_coverage = false;

  const std::vector<std::string> all_formats{"text", "json", "jsonl", "csv"};

  auto* info = app.add_subcommand("curve", "invariants of a curve and optional points");
  add_curve_options(info, curve, false);
  add_common(info, common, {"text", "json"});

  auto* seq = app.add_subcommand("seq", "multiples nP + Q with their divisors");
  add_curve_options(seq, curve, true);
  add_common(seq, common, all_formats);
  seq->add_option("--n-max", n_max, "largest index n")->check(CLI::PositiveNumber);

  auto* zs = app.add_subcommand("zsigmondy", "primitive-divisor scan of D_{nP+Q}");
  add_curve_options(zs, curve, true);
  add_common(zs, common, all_formats);
  zs->add_option("--n-max", n_max, "largest index n")->check(CLI::PositiveNumber);
  zs->add_flag("--check-coverage", check_coverage, "check non-primitive indices against multiples of P");
  zs->add_option("--coverage-limit", coverage_limit, "largest index checked for coverage")->check(CLI::PositiveNumber);

  auto* dv = app.add_subcommand("divisibility", "check D_{mP} <= D_{nP} for m | n");
  add_curve_options(dv, curve, true);
  add_common(dv, common, {"text", "json"});
  dv->add_option("--n-max", n_max, "largest index n")->check(CLI::PositiveNumber);

  auto* gr = app.add_subcommand("growth", "valuation growth law at a place");
  add_curve_options(gr, curve, true);
  add_common(gr, common, all_formats);
  gr->add_option("--place", place, "monic irreducible polynomial or inf")->required();
  gr->add_option("--n-max", n_max, "largest index n")->check(CLI::PositiveNumber);
  gr->add_option("--indices", indices, "comma-separated indices to check instead of 1..n-max");
  gr->add_option("--height-budget", height_budget, "skip indices whose naive height would exceed this")->check(CLI::PositiveNumber);

  auto* hs = app.add_subcommand("heights", "naive height vs degree, canonical height estimate");
  add_curve_options(hs, curve, true);
  add_common(hs, common, all_formats);
  hs->add_option("--n-max", n_max, "largest index n")->check(CLI::PositiveNumber);

  auto* cr = app.add_subcommand("criterion", "the (p, r) criterion");
  cr->require_subcommand(1);
  auto* table = cr->add_subcommand("table", "admissible pairs (p, r)");
  table->add_option("--p-list", p_list, "comma-separated characteristics");
  table->add_option("--r-max", r_max, "largest torsion order r")->check(CLI::Range(2L, 1000L));
  add_common(table, common, {"text", "json", "csv"});
  auto* sum = cr->add_subcommand("sum", "exact sum over the divisor set");
  sum->add_option("--n", n, "index n")->required()->check(CLI::PositiveNumber);
  sum->add_option("--p", p, "0 or a prime")->required()->check(CLI::NonNegativeNumber);
  sum->add_option("--r", r, "order of Q")->required()->check(CLI::PositiveNumber);
  add_common(sum, common, {"text", "json"});

  auto* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  auto* ss = demo->add_subcommand("supersingular", "primitive-divisor failure on a supersingular twist");
  ss->add_option("--p", p, "odd prime")->required();
  ss->add_option("--l-max", l_max, "largest exponent l in p^l")->check(CLI::NonNegativeNumber);
  add_common(ss, common, {"text", "json"});

  auto* fac = app.add_subcommand("factor", "squarefree and irreducible factorization");
  fac->add_option("--p", p, "0 or an odd prime")->required();
  fac->add_option("--f", expr, "polynomial in t")->required();
  add_common(fac, common, {"text", "json"});

  auto* val = app.add_subcommand("valuation", "valuation of f at a place");
  val->add_option("--p", p, "0 or an odd prime")->required();
  val->add_option("--place", place, "place polynomial or inf")->required();
  val->add_option("--f", expr, "rational function in t")->required();
  add_common(val, common, {"text", "json"});

  auto* ver = app.add_subcommand("verify", "recompute a JSON report and compare");
  ver->add_option("report", report_path, "report file, - for stdin")->required();
  add_common(ver, common, {"text", "json"});

  // CLI11 reports its own errors with exit code 2 via our override below.
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  zsigff::api::RunOptions opt;
  opt.jobs = common.jobs;
  if (!common.quiet) opt.progress = [](const std::string& msg) { std::cerr << "[zsigff] " << msg << "\n"; };

  try {
    json rep;
    if (*info) {
      rep = zsigff::api::run("curve", curve_input(curve), opt);
    } else if (*seq) {
      json in = curve_input(curve);
      in["n_max"] = n_max;
      rep = zsigff::api::run("seq", in, opt);
    } else if (*zs) {
      json in = curve_input(curve);
      in["n_max"] = n_max;
      if (check_coverage) {
        in["check_coverage"] = true;
        in["coverage_limit"] = coverage_limit;
      }
      rep = zsigff::api::run("zsigmondy", in, opt);
    } else if (*dv) {
      json in = curve_input(curve);
      in["n_max"] = n_max;
      rep = zsigff::api::run("divisibility", in, opt);
    } else if (*gr) {
      json in = curve_input(curve);
      in["n_max"] = n_max;
      in["place"] = place;
      in["height_budget"] = height_budget;
      if (!indices.empty()) in["indices"] = parse_list(indices);
      rep = zsigff::api::run("growth", in, opt);
    } else if (*hs) {
      json in = curve_input(curve);
      in["n_max"] = n_max;
      rep = zsigff::api::run("heights", in, opt);
    } else if (*table) {
      rep = zsigff::api::run("criterion_table", json{{"p_list", parse_list(p_list)}, {"r_max", r_max}}, opt);
    } else if (*sum) {
      rep = zsigff::api::run("criterion_sum", json{{"n", n}, {"p", p}, {"r", r}}, opt);
    } else if (*ss) {
      rep = zsigff::api::run("demo_supersingular", json{{"p", p}, {"l_max", l_max}}, opt);
    } else if (*fac) {
      rep = zsigff::api::run("factor", json{{"p", p}, {"f", expr}}, opt);
    } else if (*val) {
      rep = zsigff::api::run("valuation", json{{"p", p}, {"place", place}, {"f", expr}}, opt);
    } else if (*ver) {
      json doc;
      try {
        if (report_path == "-") {
          doc = json::parse(std::cin);
        } else {
          std::ifstream f(report_path);
          if (!f) throw zsigff::DomainError("cannot open " + report_path);
          doc = json::parse(f);
        }
      } catch (const json::parse_error& e) {
        throw zsigff::DomainError(std::string("report is not valid JSON: ") + e.what());
      }
      json out = zsigff::api::verify(doc, opt);
      if (common.format == "json") {
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << out.at("kind").get<std::string>() << ": "
                  << (out.at("ok").get<bool>() ? "reproduced" : "DIFFERS in " + join(out.at("differences"), ", "))
                  << ", checks " << (out.at("passed").get<bool>() ? "passed" : "FAILED") << "\n";
      }
      return out.at("ok").get<bool>() && out.at("passed").get<bool>() ? kExitOk : kExitMismatch;
    }
    render(rep, common.format);
    return rep.at("passed").get<bool>() ? kExitOk : kExitMismatch;
  } catch (const zsigff::ConsistencyError& e) {
    std::cerr << "error: internal consistency: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const zsigff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
