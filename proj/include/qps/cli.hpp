#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qps/json_io.hpp"
#include "qps/verify.hpp"

namespace qps {
namespace cli {

// Exit codes: 0 computed / all checks passed, 1 usage or domain error,
// 2 verification failure.
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kVerifyFailure = 2;

struct Output {
  std::string format = "text";
  std::string out_path;

  void attach(CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", out_path, "Write output to a file instead of stdout");
  }

  bool is_json() const { return format == "json"; }

  void emit(const std::string& text, std::ostream& fallback) const {
    if (out_path.empty()) {
      fallback << text;
      if (!text.empty() && text.back() != '\n') fallback << "\n";
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
      f << text;
      if (!text.empty() && text.back() != '\n') f << "\n";
    }
  }
};

inline std::string render(const json& j) { return j.dump(); }

inline std::string rho_text(const RhoVector& r) { return r.str(); }

inline std::string series_text(const std::vector<SeriesLayer>& layers) {
  std::string s;
  for (const auto& l : layers) {
    if (!s.empty()) s += "\n";
    s += l.str();
  }
  return s;
}

inline std::string report_text(const CheckReport& rep) {
  std::string s;
  for (const auto& c : rep.checks) {
    s += c.pass ? "[PASS] " : "[FAIL] ";
    s += c.name;
    if (!c.pass && !c.detail.empty()) s += "  (" + c.detail + ")";
    s += "\n";
  }
  s += std::to_string(rep.checks.size() - rep.failures()) + "/" +
       std::to_string(rep.checks.size()) + " checks passed";
  return s;
}

inline json gadget_catalog(int n, long long k_max, long long block_max) {
  json arr = json::array();
  auto entry = [&](const gadgets::GadgetSpec& g, std::optional<long long> degree) {
    json j;
    j["name"] = gadgets::kind_name(g.kind);
    json params;
    params["n"] = g.n;
    if (g.kind != gadgets::GadgetKind::TransportUnitary &&
        g.kind != gadgets::GadgetKind::DegreeShiftIsometry &&
        g.kind != gadgets::GadgetKind::CornerShiftIsometry &&
        g.kind != gadgets::GadgetKind::StandardProj)
      params["slot"] = g.slot;
    switch (g.kind) {
      case gadgets::GadgetKind::Shift:
      case gadgets::GadgetKind::ProjFinite:
      case gadgets::GadgetKind::ProjCofinite:
      case gadgets::GadgetKind::TransportUnitary:
      case gadgets::GadgetKind::DegreeShiftIsometry:
      case gadgets::GadgetKind::CornerShiftIsometry:
        params["k"] = g.k;
        break;
      case gadgets::GadgetKind::MatrixUnit:
        params["i"] = g.k;
        params["j"] = g.l;
        break;
      case gadgets::GadgetKind::StandardProj:
        params["A"] = subset_elements(g.subset);
        params["l"] = g.l;
        break;
      case gadgets::GadgetKind::GatherUnitary:
        params["k"] = g.k;
        params["N"] = g.N;
        break;
      case gadgets::GadgetKind::BackfillUnitary:
        params["k"] = g.k;
        params["l"] = g.l;
        break;
      default:
        break;
    }
    j["params"] = std::move(params);
    if (degree) j["degree"] = *degree;
    else j["degree"] = nullptr;
    try {
      gadgets::build(g);
      j["certified"] = true;
    } catch (const std::exception& e) {
      j["certified"] = false;
      j["error"] = e.what();
    }
    arr.push_back(std::move(j));
  };

  using GK = gadgets::GadgetKind;
  for (int slot = 1; slot <= n; ++slot) {
    entry({GK::Shift, n, slot, 1}, 1);
    entry({GK::ProjFinite, n, slot, k_max}, 0);
    entry({GK::ProjCofinite, n, slot, k_max}, 0);
    entry({GK::MatrixUnit, n, slot, 1, 1, 0}, 1);
    entry({GK::AbsorbUnitary, n, slot}, std::nullopt);
    for (long long k = 2; k <= k_max; ++k)
      for (long long N = 1; N <= block_max; ++N) {
        gadgets::GadgetSpec g{GK::GatherUnitary, n, slot, k, N};
        entry(g, std::nullopt);
      }
    for (long long k = 2; k <= k_max; ++k)
      for (long long l = 1; l <= block_max; ++l) {
        gadgets::GadgetSpec g{GK::BackfillUnitary, n, slot, k, 1, l};
        entry(g, std::nullopt);
      }
  }
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    gadgets::GadgetSpec g{GK::StandardProj, n, 1, 0, 1, 1, mask};
    entry(g, 0);
  }
  if (n >= 2) {
    for (long long k = 1; k <= k_max; ++k) entry({GK::TransportUnitary, n, 1, k}, std::nullopt);
    for (long long r = 1; r <= k_max; ++r) entry({GK::CornerShiftIsometry, n, 1, r}, -r);
  }
  for (long long k = -k_max; k <= k_max; ++k) entry({GK::DegreeShiftIsometry, n, 1, k}, k);
  return arr;
}

inline AlgMatrix read_matrix_input(const std::string& path) {
  json j;
  if (path.empty() || path == "-") {
    j = json::parse(std::cin);
  } else {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
    j = json::parse(f);
  }
  return matrix_from_json(j);
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic toolkit for Toeplitz cubes, multipullback quantum spheres, "
               "and quantum projective spaces"};
  app.require_subcommand(1);

  int exit_code = kOk;
  std::string result;
  Output output;

  // ---- reduce / rho / equiv / realize -------------------------------------
  struct SumArgs {
    std::string sum, sum2, ambient = "toeplitz";
    int n = 1;
  } sa;

  auto add_sum_flags = [&](CLI::App* sub, bool two_sums) {
    sub->add_option("sum", sa.sum, "Sum of standard projections, e.g. \"2*{1,2} + 1*{1}\"")
        ->required();
    if (two_sums) sub->add_option("sum2", sa.sum2, "Second sum")->required();
    sub->add_option("--ambient", sa.ambient, "Ambient algebra")
        ->check(CLI::IsMember({"toeplitz", "sphere", "cpn"}));
    sub->add_option("--n", sa.n, "Number of tensor factors")->required()->check(CLI::Range(1, 20));
    output.attach(sub);
  };

  CLI::App* c_reduce = app.add_subcommand("reduce", "Absorption normal form of a sum");
  add_sum_flags(c_reduce, false);
  c_reduce->callback([&] {
    StandardSum s = parse_sum(sa.sum, parse_ambient(sa.ambient), sa.n);
    StandardSum r = reduce(s);
    result = output.is_json() ? render(to_json(r)) : r.str();
  });

  CLI::App* c_rho = app.add_subcommand("rho", "Rank vector of a sum");
  add_sum_flags(c_rho, false);
  c_rho->callback([&] {
    RhoVector r = rho(parse_sum(sa.sum, parse_ambient(sa.ambient), sa.n));
    result = output.is_json() ? render(to_json(r)) : rho_text(r);
  });

  CLI::App* c_equiv = app.add_subcommand("equiv", "Decide equivalence of two sums");
  add_sum_flags(c_equiv, true);
  c_equiv->callback([&] {
    Ambient amb = parse_ambient(sa.ambient);
    bool eq = equivalent(parse_sum(sa.sum, amb, sa.n), parse_sum(sa.sum2, amb, sa.n));
    result = output.is_json() ? render(json{{"equivalent", eq}}) : (eq ? "true" : "false");
  });

  CLI::App* c_realize = app.add_subcommand("realize", "Materialize a sum as a matrix");
  add_sum_flags(c_realize, false);
  c_realize->callback([&] {
    AlgMatrix m = realize(parse_sum(sa.sum, parse_ambient(sa.ambient), sa.n));
    result = output.is_json() ? render(to_json(m)) : m.str();
  });

  // ---- classify-n1 ----------------------------------------------------------
  std::string in_path;
  CLI::App* c_classify = app.add_subcommand(
      "classify-n1", "Classify an idempotent matrix over the one-variable algebra");
  c_classify->add_option("--in", in_path, "Matrix JSON file ('-' or absent reads stdin)");
  output.attach(c_classify);
  c_classify->callback([&] {
    ClassN1 c = classify_n1(read_matrix_input(in_path));
    result = output.is_json() ? render(to_json(c)) : c.str();
  });

  // ---- k0-class --------------------------------------------------------------
  struct K0Args {
    int n = 2;
    int slot = 1;
    long long k = 0;
    std::string sum;
  } ka;
  CLI::App* c_k0 = app.add_subcommand("k0-class", "K0 coordinates of an elementary projection "
                                                  "or a prefix standard sum");
  c_k0->add_option("--n", ka.n, "Number of tensor factors")->required()->check(CLI::Range(1, 20));
  CLI::Option* o_slot = c_k0->add_option("--slot", ka.slot, "Slot carrying the block");
  CLI::Option* o_k = c_k0->add_option("--k", ka.k, "Block parameter (k>0: P_k, k<0: cofinite, 0: I)")
      ->check(CLI::Range(-512ll, 512ll));
  CLI::Option* o_sum = c_k0->add_option("--sum", ka.sum, "Prefix standard sum, e.g. \"2*{1}\"");
  o_sum->excludes(o_slot);
  o_sum->excludes(o_k);
  output.attach(c_k0);
  c_k0->callback([&] {
    K0Class c = ka.sum.empty()
                    ? class_of_elementary(ElementaryProj(ka.n, ka.slot, ka.k))
                    : class_of_standard_sum(parse_sum(ka.sum, Ambient::CPn, ka.n));
    result = output.is_json() ? render(to_json(c)) : c.str();
  });

  // ---- cone --------------------------------------------------------------------
  std::vector<long long> coords;
  CLI::App* c_cone = app.add_subcommand("cone", "Positive-cone membership of a K0 vector");
  c_cone->add_option("--coords", coords, "Coordinates, e.g. --coords -4 2 0")
      ->required()
      ->expected(-1);
  output.attach(c_cone);
  c_cone->callback([&] {
    ConeVerdict v = cone_contains(K0Class((int)coords.size(), coords));
    result = output.is_json() ? render(json{{"verdict", cone_verdict_name(v)}})
                              : cone_verdict_name(v);
  });

  // ---- sr / series ----------------------------------------------------------------
  int sr_n = 1;
  CLI::App* c_sr = app.add_subcommand("sr", "Stable rank and related thresholds");
  c_sr->add_option("--n", sr_n, "Number of tensor factors")->required()->check(CLI::Range(1, 1000));
  output.attach(c_sr);
  c_sr->callback([&] {
    if (output.is_json()) {
      json j;
      j["n"] = sr_n;
      j["sr"] = stable_rank(sr_n);
      j["csr_upper"] = csr_upper(sr_n);
      j["gl0_threshold"] = gl0_threshold(sr_n);
      j["free_rank_threshold"] = free_rank_threshold(Ambient::Toeplitz, sr_n);
      result = render(j);
    } else {
      result = std::to_string(stable_rank(sr_n));
    }
  });

  struct SeriesArgs {
    int n = 1;
    std::string which = "toeplitz";
  } se;
  CLI::App* c_series = app.add_subcommand("series", "Composition series layers");
  c_series->add_option("--n", se.n, "Number of tensor factors")->required()->check(CLI::Range(1, 30));
  c_series->add_option("--ambient", se.which, "toeplitz or sphere")
      ->check(CLI::IsMember({"toeplitz", "sphere"}));
  output.attach(c_series);
  c_series->callback([&] {
    auto layers = composition_series(
        se.n, se.which == "sphere" ? SeriesKind::Sphere : SeriesKind::Toeplitz);
    result = output.is_json() ? render(to_json(layers)) : series_text(layers);
  });

  // ---- nu ---------------------------------------------------------------------------
  struct NuArgs {
    long long m = 0, l = 1;
  } na;
  CLI::App* c_nu = app.add_subcommand("nu", "Multiplicity number nu(m, l)");
  c_nu->add_option("--m", na.m)->required()->check(CLI::Range(0ll, 512ll));
  c_nu->add_option("--l", na.l)->required()->check(CLI::Range(1ll, 512ll));
  output.attach(c_nu);
  c_nu->callback([&] {
    BigUint v = nu(na.m, na.l);
    result = output.is_json() ? render(json{{"m", na.m}, {"l", na.l}, {"nu", to_json(v)}})
                              : v.str();
  });

  // ---- linebundle --------------------------------------------------------------------
  struct LbArgs {
    int n = 2;
    long long k = 0;
    bool realize_flag = false;
  } lb;
  CLI::App* c_lb = app.add_subcommand("linebundle", "Decompose a degree-k line bundle");
  c_lb->add_option("--n", lb.n, "Number of tensor factors")->required()->check(CLI::Range(2, 20));
  c_lb->add_option("--k", lb.k, "Degree")->required()->check(CLI::Range(-512ll, 512ll));
  c_lb->add_flag("--realize", lb.realize_flag, "Materialize and recheck the projection");
  output.attach(c_lb);
  c_lb->callback([&] {
    LBDecomposition d = decompose_L(lb.n, lb.k);
    json j = to_json(d);
    if (lb.realize_flag) {
      realize_decomposition(d);  // throws if the materialized matrix misbehaves
      j["realized"] = true;
      j["is_projection"] = true;
    }
    if (output.is_json()) {
      result = render(j);
    } else {
      std::string s = "L(" + std::to_string(lb.k) + ") over n=" + std::to_string(lb.n) + ":";
      for (const auto& [e, c] : d.summands) s += "\n  " + c.str() + " x " + e.str();
      K0Class cls = class_of_L(lb.n, lb.k);
      s += "\nk0 = " + cls.str() + ", rank " + std::to_string(rank_of_class(cls));
      result = s;
    }
  });

  // ---- gadgets -------------------------------------------------------------------------
  struct GadgetArgs {
    int n = 1;
    long long k_max = 3, block_max = 2;
  } ga;
  CLI::App* c_gadgets = app.add_subcommand("gadgets", "Catalog of named operators");
  c_gadgets->add_option("--n", ga.n, "Number of tensor factors")->required()->check(CLI::Range(1, 8));
  c_gadgets->add_option("--k-max", ga.k_max, "Degree/size bound")->check(CLI::Range(1, 8));
  c_gadgets->add_option("--block-max", ga.block_max, "Block width bound")->check(CLI::Range(1, 6));
  output.attach(c_gadgets);
  c_gadgets->callback([&] { result = render(gadget_catalog(ga.n, ga.k_max, ga.block_max)); });

  // ---- verify --------------------------------------------------------------------------
  struct VerifyArgs {
    int n = 3;
    std::string bounds = "default";
  } va;
  CLI::App* c_verify = app.add_subcommand("verify", "Run the full exact identity suite");
  c_verify->add_option("--n", va.n, "Largest ambient to exercise")->check(CLI::Range(1, 5));
  c_verify->add_option("--bounds", va.bounds, "Bounds profile")
      ->check(CLI::IsMember({"default", "quick"}));
  output.attach(c_verify);
  c_verify->callback([&] {
    VerifyBounds b = va.bounds == "quick" ? VerifyBounds::quick() : VerifyBounds::defaults();
    CheckReport rep = run_full_verification(va.n, b);
    result = output.is_json() ? render(to_json(rep)) : report_text(rep);
    if (!rep.all_pass()) exit_code = kVerifyFailure;
  });

  // ---- drive --------------------------------------------------------------------------
  std::vector<const char*> argv;
  argv.push_back("qps");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    output.emit(result, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return exit_code;
}

}  // namespace cli
}  // namespace qps
