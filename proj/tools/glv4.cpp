#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "glv4/campaign.hpp"
#include "glv4/costmodel.hpp"
#include "glv4/instance_io.hpp"

using json = nlohmann::ordered_json;
using namespace glv4;

namespace {

bool g_pretty = false;

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  return v.dump();
}

// One JSON object per line, or an aligned key/value block with --pretty.
void emit(const json& j) {
  if (!g_pretty) {
    std::cout << j.dump() << "\n";
    return;
  }
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      std::cout << it.key() << ":\n";
      for (auto jt = it->begin(); jt != it->end(); ++jt)
        std::cout << "  " << jt.key() << std::string(width > jt.key().size() ? width - jt.key().size() : 0, ' ')
                  << "  " << cell(*jt) << "\n";
    } else {
      std::cout << it.key() << std::string(width - it.key().size(), ' ') << "  " << cell(*it)
                << "\n";
    }
  }
  std::cout << "\n";
}

// Rows sharing the same keys as one table with --pretty.
void emit_table(const std::vector<json>& rows) {
  if (!g_pretty) {
    for (const auto& r : rows) emit(r);
    return;
  }
  if (rows.empty()) return;
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  std::vector<std::size_t> w(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    w[c] = keys[c].size();
    for (const auto& r : rows) w[c] = std::max(w[c], cell(r[keys[c]]).size());
  }
  auto line = [&](auto get) {
    for (std::size_t c = 0; c < keys.size(); ++c) {
      std::string s = get(c);
      std::cout << s << std::string(w[c] - s.size() + 2, ' ');
    }
    std::cout << "\n";
  };
  line([&](std::size_t c) { return keys[c]; });
  for (const auto& r : rows) line([&](std::size_t c) { return cell(r[keys[c]]); });
  std::cout << "\n";
}

double round10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

std::uint64_t seed_of(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GLV4_SEED")) return std::strtoull(env, nullptr, 0);
  return 1;
}

json tallies(const OpCounter& c) {
  return {{"m", c.m}, {"s", c.s}, {"a", c.a}, {"i", c.i},
          {"M", c.M}, {"S", c.S}, {"A", c.A}, {"I", c.I}};
}

json kv_json(const std::string& text) {
  json j;
  for (auto& [k, v] : parse_kv(text)) j[k] = v;
  return j;
}

struct WeightOpts {
  CostModelWeights w;
  bool unit = false;
  void add(CLI::App* c) {
    c->add_option("--s-per-m", w.s_per_m, "price of s in m");
    c->add_option("--a-per-m", w.a_per_m, "price of a in m");
    c->add_option("--i-per-m", w.i_per_m, "price of i in m");
    c->add_option("--M-per-m", w.M_per_m, "price of M in m");
    c->add_flag("--unit-weights", unit, "price every operation at 1");
  }
  CostModelWeights get() const { return unit ? CostModelWeights::ones() : w; }
};

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// ---- subcommands ----

int cmd_catalog_list() {
  std::vector<json> rows;
  for (const auto& f : families()) {
    rows.push_back({{"family", f.name}, {"r", f.r}, {"s", f.s}, {"disc", f.disc},
                    {"units", f.units}, {"condition", f.condition}, {"equation", f.equation},
                    {"endomorphism", f.endomorphism}});
  }
  emit_table(rows);
  return 0;
}

struct InstOpts {
  std::string family = "E2", prime, coeff, u, kind = "twist", out;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* c) {
    c->add_option("--family", family, "E1..E6");
    c->add_option("--prime", prime, "p in hex")->required();
    c->add_option("--coeff", coeff, "a for E1, b for E2, hex");
    c->add_option("--u", u, "twist parameter <re>,<im> in hex");
    c->add_option("--kind", kind, "twist or base")->check(CLI::IsMember({"twist", "base"}));
    c->add_option("--out", out, "write the instance file here");
    c->add_option("--seed", seed, "PRNG seed (default GLV4_SEED or 1)");
  }
};

int cmd_instantiate(const InstOpts& o) {
  std::optional<Int> coeff;
  if (!o.coeff.empty()) coeff = from_hex(o.coeff);
  std::uint64_t seed = seed_of(o.seed);
  Rng rng(seed);
  GlvCurve c = catalog_get(parse_family(o.family), from_hex(o.prime), coeff);
  std::string text;
  if (o.kind == "base") {
    text = save_base(make_base_instance(c, rng));
  } else {
    std::optional<std::pair<Int, Int>> u;
    if (!o.u.empty()) {
      auto comma = o.u.find(',');
      if (comma == std::string::npos) throw FormatError("--u expects <re>,<im>");
      u = std::make_pair(from_hex(o.u.substr(0, comma)), from_hex(o.u.substr(comma + 1)));
    }
    text = save_twist(make_twist(c, rng, u));
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw FormatError("cannot write " + o.out);
    f << text;
  }
  json j = kv_json(text);
  j["seed"] = seed;
  emit(j);
  return 0;
}

struct DecompOpts {
  std::string curve, scalar, method = "cornacchia", mode = "glv4";
  void add(CLI::App* c) {
    c->add_option("--curve", curve, "instance file")->required();
    c->add_option("--scalar", scalar, "k in hex")->required();
    c->add_option("--method", method, "cornacchia or lll")
        ->check(CLI::IsMember({"cornacchia", "lll"}));
    c->add_option("--mode", mode, "glv4 or glv2")->check(CLI::IsMember({"glv4", "glv2"}));
  }
};

int cmd_decompose(const DecompOpts& o) {
  LoadedInstance li = load_instance_file(o.curve);
  Int k = from_hex(o.scalar);
  DecompBasis basis;
  DecompJob job;
  const FamilyInfo* fi;
  Mode mode = parse_mode(o.mode);
  std::optional<GlvContext> ctx;
  if (li.twist) {
    ctx = GlvContext::make(*li.twist, parse_method(o.method));
    fi = &li.twist->info();
    job.basis = mode == Mode::glv4 ? &ctx->basis4 : &ctx->basis2;
  } else {
    basis = glv2_reduce(li.base->n, li.base->lambda);
    fi = &li.base->info();
    job.basis = &basis;
    mode = Mode::glv2;
  }
  job.r = fi->r;
  job.s = fi->s;
  BoundConstants bc = bound_constants(fi->r, fi->s);
  double n4 = std::pow(job.basis->n.get_d(), 0.25), bound;
  if (mode == Mode::glv2) {
    job.bound = BoundKind::kappa;
    job.rounding = Rounding::best_vertex;
    bound = bc.kappa * std::sqrt(job.basis->n.get_d());
  } else if (o.method == "lll") {
    job.bound = BoundKind::thm1;
    job.B4 = bc.B4;
    bound = bc.thm1_bound * n4;
  } else {
    job.bound = BoundKind::thm3;
    bound = bc.thm3_bound * n4;
  }
  Decomposition d = babai_decompose(k, *job.basis, job.rounding);
  DecompSample s = decompose_sample(job, k);
  json j;
  for (int i = 0; i < 4; ++i) j["k" + std::to_string(i + 1)] = to_hex(d.parts[std::size_t(i)]);
  j["rect_norm"] = to_hex(d.rect_norm);
  j["bound"] = bound;
  j["bound_kind"] = bound_name(job.bound);
  j["bound_ok"] = s.bound_ok;
  j["congruent"] = s.congruent;
  j["mode"] = mode_name(mode);
  j["method"] = li.twist ? o.method : "euclid";
  emit(j);
  return s.bound_ok && s.congruent ? 0 : 1;
}

struct MulOpts {
  std::string curve, scalar, mode = "glv4", method = "cornacchia";
  int cores = 1;
  bool report_ops = false, check = false;
  WeightOpts weights;
  void add(CLI::App* c) {
    c->add_option("--curve", curve, "instance file")->required();
    c->add_option("--scalar", scalar, "k in hex")->required();
    c->add_option("--mode", mode, "non-glv, glv2 or glv4")
        ->check(CLI::IsMember({"non-glv", "glv2", "glv4"}));
    c->add_option("--method", method, "cornacchia or lll")
        ->check(CLI::IsMember({"cornacchia", "lll"}));
    c->add_option("--cores", cores, "1, or the mode's dimension for the split-core count");
    c->add_flag("--report-ops", report_ops, "include operation tallies");
    c->add_flag("--check", check, "compare against double-and-add");
    weights.add(c);
  }
};

int cmd_mul(const MulOpts& o) {
  LoadedInstance li = load_instance_file(o.curve);
  Int k = from_hex(o.scalar);
  CostModelWeights w = o.weights.get();
  json j;
  bool ok = true;
  if (li.twist) {
    GlvContext ctx = GlvContext::make(*li.twist, parse_method(o.method));
    Mode mode = parse_mode(o.mode);
    MulResult r = glv_multiply(k, ctx, mode, o.cores);
    j["result"] = serialize(r.point);
    j["mode"] = mode_name(mode);
    j["cores"] = o.cores;
    if (o.report_ops) {
      j["tallies"] = tallies(r.ops);
      j["weighted_cost"] = weighted_ext(r.ops, w);
      j["dbl"] = r.chain.dbl;
      j["madd"] = r.chain.madd;
      j["add"] = r.chain.add;
      if (o.cores > 1) j["total_tallies"] = tallies(r.total);
    }
    if (o.check) {
      Uncounted quiet;
      ok = scalar_mul_reference(li.twist->curve, k, li.twist->P) == r.point;
      j["check"] = ok;
    }
  } else {
    BaseGlvContext ctx = BaseGlvContext::make(*li.base);
    BaseMulResult r = glv2_base_multiply(k, ctx, o.cores);
    j["result"] = serialize(r.point);
    j["mode"] = "glv2";
    j["cores"] = o.cores;
    if (o.report_ops) {
      j["tallies"] = tallies(r.ops);
      j["weighted_cost"] = weighted_base(r.ops, w);
      j["dbl"] = r.chain.dbl;
      j["madd"] = r.chain.madd;
      j["add"] = r.chain.add;
    }
    if (o.check) {
      Uncounted quiet;
      ok = scalar_mul_reference(li.base->curve, k, li.base->P) == r.point;
      j["check"] = ok;
    }
  }
  emit(j);
  return ok ? 0 : 1;
}

struct VerifyOpts {
  std::string curve, method = "cornacchia", mode = "glv4";
  std::size_t samples = 10000;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  bool serial = false;
  void add(CLI::App* c) {
    c->add_option("--curve", curve, "instance file")->required();
    c->add_option("--samples", samples, "random scalars to decompose");
    c->add_option("--method", method, "cornacchia or lll")
        ->check(CLI::IsMember({"cornacchia", "lll"}));
    c->add_option("--mode", mode, "glv4 or glv2")->check(CLI::IsMember({"glv4", "glv2"}));
    c->add_option("--seed", seed, "PRNG seed (default GLV4_SEED or 1)");
    c->add_option("--threads", threads, "OpenMP threads, 0 for the runtime default");
    c->add_flag("--serial", serial, "use the serial runner");
  }
};

int cmd_verify_bounds(const VerifyOpts& o) {
  set_threads(o.threads);
  LoadedInstance li = load_instance_file(o.curve);
  std::uint64_t seed = seed_of(o.seed);
  Rng rng(seed);
  Mode mode = li.twist ? parse_mode(o.mode) : Mode::glv2;
  const FamilyInfo& fi = li.twist ? li.twist->info() : li.base->info();
  const Int& n = li.twist ? li.twist->n : li.base->n;
  BoundConstants bc = bound_constants(fi.r, fi.s);

  auto t0 = std::chrono::steady_clock::now();
  std::optional<GlvContext> ctx;
  DecompBasis b2;
  if (li.twist) ctx = GlvContext::make(*li.twist, parse_method(o.method));
  else b2 = glv2_reduce(n, li.base->lambda);
  double basis_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  DecompJob job;
  job.r = fi.r;
  job.s = fi.s;
  job.B4 = bc.B4;
  if (mode == Mode::glv4) {
    job.basis = &ctx->basis4;
    job.bound = o.method == "lll" ? BoundKind::thm1 : BoundKind::thm3;
  } else {
    job.basis = ctx ? &ctx->basis2 : &b2;
    job.bound = BoundKind::kappa;
    job.rounding = Rounding::best_vertex;
  }
  std::vector<Int> ks = random_scalars(n, o.samples, rng);
  DecompReport rep = o.serial ? decomposition_campaign_serial(job, ks)
                              : decomposition_campaign_omp(job, ks);

  double c = std::sqrt(double(c_rs(fi.r, fi.s)));
  json j;
  j["samples"] = rep.samples;
  j["seed"] = seed;
  j["mode"] = mode_name(mode);
  j["method"] = li.twist ? o.method : "euclid";
  j["bound_kind"] = bound_name(job.bound);
  j["violations"] = rep.violations;
  j["congruence_failures"] = rep.congruence_failures;
  j["max_ratio"] = rep.max_ratio;
  j["mean_max_bits"] = rep.mean_max_bits;
  j["theory"] = {{"alg", 51.5 * c}, {"thm3", 103 * c}, {"thm1", bc.thm1_bound},
                 {"kappa", bc.kappa}};
  j["basis_ms"] = basis_ms;
  std::size_t problems = rep.violations + rep.congruence_failures;
  if (mode == Mode::glv4) {
    BasisReport br = check_basis(*job.basis, fi.r, fi.s);
    j["basis"] = {{"det_ok", br.det_ok},         {"kernel_ok", br.kernel_ok},
                  {"alg_bound_ok", br.alg_bound_ok}, {"thm1_rows_ok", br.thm1_rows_ok},
                  {"norm_floor_ok", br.norm_floor_ok},
                  {"gaussian_floor_ok", br.gaussian_floor_ok}, {"max_ratio", br.max_ratio}};
    bool rows_ok = br.det_ok && br.kernel_ok && br.norm_floor_ok && br.thm1_rows_ok &&
                   (o.method == "lll" || (br.alg_bound_ok && br.gaussian_floor_ok));
    problems += !rows_ok;
    j["egea"] = {{"runs", ctx->egea.runs},
                 {"iterations", ctx->egea.iterations},
                 {"checks", ctx->egea.checks},
                 {"failures", ctx->egea.failures}};
    problems += ctx->egea.failures;
  }
  j["ok"] = problems == 0;
  emit(j);
  return problems == 0 ? 0 : 1;
}

struct CostOpts {
  std::string curve, base, method = "cornacchia";
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  WeightOpts weights;
  void add(CLI::App* c) {
    c->add_option("--curve", curve, "twist instance file")->required();
    c->add_option("--base", base, "F_p instance file for the 2-GLV comparison");
    c->add_option("--samples", samples, "scalars averaged per mode");
    c->add_option("--method", method, "cornacchia or lll")
        ->check(CLI::IsMember({"cornacchia", "lll"}));
    c->add_option("--seed", seed, "PRNG seed (default GLV4_SEED or 1)");
    weights.add(c);
  }
};

json mean_tallies(const OpCounter& c, std::size_t n) {
  double d = n ? double(n) : 1;
  return {{"m", round10(double(c.m) / d)}, {"s", round10(double(c.s) / d)},
          {"a", round10(double(c.a) / d)}, {"i", round10(double(c.i) / d)},
          {"M", round10(double(c.M) / d)}, {"S", round10(double(c.S) / d)},
          {"A", round10(double(c.A) / d)}, {"I", round10(double(c.I) / d)}};
}

int cmd_cost_report(const CostOpts& o) {
  LoadedInstance li = load_instance_file(o.curve);
  if (!li.twist) throw FormatError("--curve must be a twist instance");
  CostModelWeights w = o.weights.get();
  std::uint64_t seed = seed_of(o.seed);
  Rng rng(seed);
  GlvContext ctx = GlvContext::make(*li.twist, parse_method(o.method));
  std::vector<Int> ks = random_scalars(li.twist->n, o.samples, rng);

  struct Run {
    Mode mode;
    int cores;
  };
  std::vector<json> rows;
  std::map<std::string, double> cost;
  std::size_t mismatches = 0;
  for (Run run : {Run{Mode::non_glv, 1}, Run{Mode::glv2, 1}, Run{Mode::glv4, 1},
                  Run{Mode::glv2, 2}, Run{Mode::glv4, 4}}) {
    MulReport rep = mul_campaign_serial(ctx, run.mode, run.cores, ks);
    mismatches += rep.mismatches;
    double wc = o.samples ? weighted_ext(rep.ops_sum, w) / double(o.samples) : 0;
    std::string key = std::string(mode_name(run.mode)) + "/" + std::to_string(run.cores);
    cost[key] = wc;
    json row = {{"curve", "twist"}, {"mode", mode_name(run.mode)}, {"cores", run.cores}};
    json mean = mean_tallies(rep.ops_sum, o.samples);
    for (const char* k : {"m", "s", "a", "i"}) row[k] = mean[k];
    row["dbl"] = rep.dbl_max;
    row["madd"] = round10(rep.mean_madd);
    row["weighted"] = round10(wc);
    rows.push_back(row);
  }

  std::vector<json> base_rows;
  bool have_base = false;
  std::optional<LoadedInstance> lb;
  if (!o.base.empty()) {
    lb = load_instance_file(o.base);
    if (!lb->base) throw FormatError("--base must be a base instance");
    have_base = true;
    BaseGlvContext bctx = BaseGlvContext::make(*lb->base);
    Rng brng(seed);
    std::vector<Int> kb = random_scalars(lb->base->n, o.samples, brng);
    for (int cores : {1, 2}) {
      OpCounter sum;
      std::uint64_t dbl = 0, madd = 0;
      for (const auto& k : kb) {
        BaseMulResult r = glv2_base_multiply(k, bctx, cores);
        Uncounted quiet;
        mismatches += !(r.point == scalar_mul_reference(lb->base->curve, k, lb->base->P));
        sum += r.ops;
        dbl = std::max(dbl, r.chain.dbl);
        madd += r.chain.madd + r.chain.add;
      }
      double wc = o.samples ? weighted_base(sum, w) / double(o.samples) : 0;
      cost["base-glv2/" + std::to_string(cores)] = wc;
      json row = {{"curve", "base"}, {"mode", "glv2"}, {"cores", cores}};
      json mean = mean_tallies(sum, o.samples);
      for (const char* k : {"M", "S", "A", "I"}) row[k] = mean[k];
      row["dbl"] = dbl;
      row["madd"] = o.samples ? round10(double(madd) / double(o.samples)) : 0;
      row["weighted"] = round10(wc);
      base_rows.push_back(row);
    }
  }
  emit_table(rows);
  emit_table(base_rows);

  json ratios;
  auto ratio = [&](const std::string& a, const std::string& b) {
    return cost[b] > 0 ? round10(cost[a] / cost[b]) : 0.0;
  };
  ratios["glv4_over_non_glv"] = ratio("glv4/1", "non-glv/1");
  ratios["glv2_over_non_glv"] = ratio("glv2/1", "non-glv/1");
  ratios["glv4_over_glv2"] = ratio("glv4/1", "glv2/1");
  if (have_base) {
    ratios["glv4_4core_over_base_glv2_2core"] = ratio("glv4/4", "base-glv2/2");
    ratios["glv4_over_base_glv2"] = ratio("glv4/1", "base-glv2/1");
  }
  json j = {{"samples", o.samples}, {"seed", seed}, {"ratios", ratios},
            {"ordering_ok", cost["non-glv/1"] > cost["glv2/1"] && cost["glv2/1"] > cost["glv4/1"]},
            {"mismatches", mismatches}};
  if (!have_base) j["comparison"] = std::string(MissingComparisonCurve("no --base instance; F_p rows omitted").what());
  emit(j);
  return mismatches == 0 ? 0 : 1;
}

int cmd_constants(int r, int s) {
  BoundConstants bc = bound_constants(r, s);
  json j = {{"r", r},
            {"s", s},
            {"B4", bc.B4.get_str()},
            {"B", round10(bc.B)},
            {"thm1", round10(bc.thm1_bound)},
            {"thm3", round10(bc.thm3_bound)},
            {"alg", round10(bc.alg_bound)},
            {"kappa", round10(bc.kappa)},
            {"u", round10(double(bc.u))},
            {"theta", round10(double(bc.theta))},
            {"Theta", round10(double(bc.Theta))},
            {"A", round10(double(bc.A))},
            {"cubic_residual", double(bc.cubic_residual)}};
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4-dimensional GLV scalar multiplication on quadratic twists"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g_pretty, "human-readable tables instead of JSON lines");

  auto* catalog = app.add_subcommand("catalog", "GLV curve families");
  catalog->require_subcommand(1);
  catalog->fallthrough();
  auto* list = catalog->add_subcommand("list", "list the families");
  InstOpts inst;
  auto* cat_inst = catalog->add_subcommand("instantiate", "build an instance file");
  inst.add(cat_inst);
  auto* top_inst = app.add_subcommand("instantiate", "same as catalog instantiate");
  inst.add(top_inst);

  DecompOpts dec;
  auto* decompose = app.add_subcommand("decompose", "split a scalar");
  dec.add(decompose);

  MulOpts mul;
  auto* mulc = app.add_subcommand("mul", "scalar multiplication with operation tallies");
  mul.add(mulc);

  VerifyOpts ver;
  auto* verify = app.add_subcommand("verify-bounds", "decomposition bound campaign");
  ver.add(verify);

  CostOpts cost;
  auto* costc = app.add_subcommand("cost-report", "weighted costs per mode");
  cost.add(costc);

  int cr = 1, cs = 1;
  auto* consts = app.add_subcommand("constants", "bound constants for X^2 + rX + s");
  consts->add_option("--r", cr, "r");
  consts->add_option("--s", cs, "s");

  CLI11_PARSE(app, argc, argv);
  try {
    if (list->parsed()) return cmd_catalog_list();
    if (cat_inst->parsed() || top_inst->parsed()) return cmd_instantiate(inst);
    if (decompose->parsed()) return cmd_decompose(dec);
    if (mulc->parsed()) return cmd_mul(mul);
    if (verify->parsed()) return cmd_verify_bounds(ver);
    if (costc->parsed()) return cmd_cost_report(cost);
    if (consts->parsed()) return cmd_constants(cr, cs);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}
