#include "qtorus/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace qtorus::harness {

// ---------------------------------------------------------------------------
// generators

MultiparameterMatrix gen_independent(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gen_independent: n must be >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      names.push_back("q_(" + std::to_string(i) + "," + std::to_string(j) + ")");
  const ValueGroup g(names, 1);
  std::vector<std::tuple<std::size_t, std::size_t, GroupElement>> upper;
  std::size_t l = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) upper.emplace_back(i, j, g.generator(l++));
  return MultiparameterMatrix::from_upper(n, g, upper);
}

std::pair<MultiparameterMatrix, MultiparameterMatrix> gen_transpose_pair(std::size_t n) {
  auto a = gen_independent(n);
  auto b = transpose(a);
  return {std::move(a), std::move(b)};
}

MultiparameterMatrix gen_random(std::size_t n, std::size_t k, std::int64_t m, int exponent_bound,
                                std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_random: n must be >= 1");
  if (m < 1) throw std::invalid_argument("gen_random: torsion order must be >= 1");
  if (exponent_bound < 0) throw std::invalid_argument("gen_random: exponent bound must be >= 0");
  std::vector<std::string> names;
  for (std::size_t l = 1; l <= k; ++l) names.push_back("q" + std::to_string(l));
  const ValueGroup g(names, m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> expo(-exponent_bound, exponent_bound);
  std::uniform_int_distribution<std::int64_t> tor(0, m - 1);
  std::vector<std::tuple<std::size_t, std::size_t, GroupElement>> upper;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVector free(k);
      for (auto& x : free) x = expo(rng);
      const std::int64_t t = exponent_bound == 0 ? 0 : tor(rng);
      upper.emplace_back(i, j, g.make(std::move(free), t));
    }
  return MultiparameterMatrix::from_upper(n, g, upper);
}

MultiparameterMatrix gen_commutative(std::size_t n) {
  return MultiparameterMatrix::commutative(n, ValueGroup({}, 1));
}

MultiparameterMatrix gen_symplectic(std::size_t h, const std::string& q) {
  if (h == 0) throw std::invalid_argument("gen_symplectic: need at least one plane");
  const ValueGroup g({q}, 1);
  std::vector<std::tuple<std::size_t, std::size_t, GroupElement>> upper;
  for (std::size_t i = 0; i < h; ++i) upper.emplace_back(2 * i, 2 * i + 1, g.generator(0));
  return MultiparameterMatrix::from_upper(2 * h, g, upper);
}

// ---------------------------------------------------------------------------
// verdicts

const char* to_string(Statement s) {
  switch (s) {
    case Statement::Superadditivity: return "Superadditivity";
    case Statement::UpperBound: return "UpperBound";
    case Statement::WeakUpperBound: return "WeakUpperBound";
    case Statement::StrictUpperBound: return "StrictUpperBound";
    case Statement::AdditivityCodimLE1: return "AdditivityCodimLE1";
    case Statement::AdditivityCodim2: return "AdditivityCodim2";
    case Statement::WeylAnalogue: return "WeylAnalogue";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::violated: return "violated";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Block sum of two witnesses inside Z^(n1+n2).
Sublattice block_sum(const Sublattice& w1, const Sublattice& w2) {
  const std::size_t n1 = w1.ambient_rank(), n2 = w2.ambient_rank();
  IntMatrix g(0, n1 + n2);
  for (std::size_t i = 0; i < w1.rank(); ++i) {
    IntVector r(n1 + n2);
    for (std::size_t c = 0; c < n1; ++c) r[c] = w1.generators()(i, c);
    g.append_row(r);
  }
  for (std::size_t i = 0; i < w2.rank(); ++i) {
    IntVector r(n1 + n2);
    for (std::size_t c = 0; c < n2; ++c) r[n1 + c] = w2.generators()(i, c);
    g.append_row(r);
  }
  return Sublattice(n1 + n2, g);
}

int rk(const MultiparameterMatrix& m) { return static_cast<int>(m.rank()); }

io::Json pair_data(const PairAnalysis& pa) {
  io::Json d;
  d["ranks"] = {rk(pa.first), rk(pa.second)};
  d["factor_dims"] = {io::to_json(pa.d1), io::to_json(pa.d2)};
  d["tensor_dim"] = io::to_json(pa.dt);
  d["centers_F"] = {pa.center1, pa.center2};
  return d;
}

Verdict make_verdict(Statement s, const PairAnalysis& pa) {
  Verdict v;
  v.statement = s;
  v.data = pair_data(pa);
  return v;
}

void attach_instances(Verdict& v, const PairAnalysis& pa) {
  if (v.conclusion != Outcome::violated) return;
  v.instances = {io::serialize(pa.first), io::serialize(pa.second), io::serialize(pa.product)};
}

// d <= bound, d given as an interval and bound as an interval.
Outcome at_most(const DimensionResult& d, int bound_lo, int bound_hi) {
  if (d.upper <= bound_lo) return Outcome::holds;
  if (d.lower > bound_hi) return Outcome::violated;
  return Outcome::inconclusive;
}

// d == target with both as intervals.
Outcome equal_to(const DimensionResult& d, int target_lo, int target_hi) {
  if (d.upper < target_lo || d.lower > target_hi) return Outcome::violated;
  if (d.lower == d.upper && target_lo == target_hi && d.lower == target_lo) return Outcome::holds;
  return Outcome::inconclusive;
}

// Statement needs exact factor dimensions to decide its hypotheses.
Verdict undecided(Statement s, const PairAnalysis& pa) {
  Verdict v = make_verdict(s, pa);
  v.applies = true;
  v.hypotheses_met = false;
  v.conclusion = Outcome::inconclusive;
  v.data["note"] = "factor dimension not exact; hypotheses undecided";
  return v;
}

Verdict not_applicable(Statement s, const PairAnalysis& pa) {
  Verdict v = make_verdict(s, pa);
  v.applies = false;
  v.hypotheses_met = false;
  v.conclusion = Outcome::holds;
  return v;
}

bool factors_exact(const PairAnalysis& pa) { return pa.d1.exact && pa.d2.exact; }

}  // namespace

PairAnalysis analyze_pair(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                          MergeMode mode, const DimensionOptions& opts) {
  MultiparameterMatrix product = tensor(a, b, mode);
  const DimensionResult d1 = dimension(a, opts);
  const DimensionResult d2 = dimension(b, opts);
  DimensionOptions topts = opts;
  topts.hints.push_back(block_sum(d1.witness, d2.witness));
  const DimensionResult dt = dimension(product, topts);
  return PairAnalysis{a,  b,  std::move(product), d1, d2, dt, center_is_F(pairing_of(a)),
                      center_is_F(pairing_of(b))};
}

Verdict check_superadditivity(const PairAnalysis& pa) {
  Verdict v = make_verdict(Statement::Superadditivity, pa);
  v.applies = v.hypotheses_met = true;
  const int lo = pa.d1.lower + pa.d2.lower, hi = pa.d1.upper + pa.d2.upper;
  v.data["sum_of_dims"] = {lo, hi};
  if (pa.dt.lower >= hi)
    v.conclusion = Outcome::holds;
  else if (pa.dt.upper < lo)
    v.conclusion = Outcome::violated;
  else
    v.conclusion = Outcome::inconclusive;
  attach_instances(v, pa);
  return v;
}

Verdict check_upper_bound(const PairAnalysis& pa) {
  if (!factors_exact(pa)) return undecided(Statement::UpperBound, pa);
  const int d1 = pa.d1.lower, d2 = pa.d2.lower, n1 = rk(pa.first), n2 = rk(pa.second);
  const int rhs = std::min(d1 + n2, d2 + n1);
  const bool met = d1 < n1 && d2 < n2;
  Verdict v = make_verdict(met ? Statement::UpperBound : Statement::WeakUpperBound, pa);
  v.applies = true;
  v.hypotheses_met = met;
  const int bound = met ? rhs - 1 : rhs;
  v.data["bound"] = bound;
  v.conclusion = at_most(pa.dt, bound, bound);
  attach_instances(v, pa);
  return v;
}

Verdict check_strict(const PairAnalysis& pa) {
  if (!factors_exact(pa)) return undecided(Statement::StrictUpperBound, pa);
  const int d1 = pa.d1.lower, d2 = pa.d2.lower, n1 = rk(pa.first), n2 = rk(pa.second);
  const bool met = d1 >= 2 && d2 >= 2 && n1 - d1 >= 2 && n2 - d2 >= 2 && pa.center1 && pa.center2;
  if (!met) return not_applicable(Statement::StrictUpperBound, pa);
  Verdict v = make_verdict(Statement::StrictUpperBound, pa);
  v.applies = v.hypotheses_met = true;
  const int bound = std::min(d1 + n2, d2 + n1) - 1;
  v.data["bound"] = bound;
  // d < bound  <=>  d <= bound - 1
  v.conclusion = at_most(pa.dt, bound - 1, bound - 1);
  attach_instances(v, pa);
  return v;
}

std::vector<Verdict> check_additivity(const PairAnalysis& pa) {
  std::vector<Verdict> out;
  const int n1 = rk(pa.first), n2 = rk(pa.second);

  auto equality = [&](Statement s) {
    Verdict v = make_verdict(s, pa);
    v.applies = v.hypotheses_met = true;
    const int lo = pa.d1.lower + pa.d2.lower, hi = pa.d1.upper + pa.d2.upper;
    v.data["sum_of_dims"] = {lo, hi};
    v.conclusion = equal_to(pa.dt, lo, hi);
    attach_instances(v, pa);
    return v;
  };

  if (!factors_exact(pa)) {
    out.push_back(undecided(Statement::AdditivityCodimLE1, pa));
    out.push_back(undecided(Statement::AdditivityCodim2, pa));
  } else {
    const int c1 = n1 - pa.d1.lower, c2 = n2 - pa.d2.lower;
    out.push_back(c1 <= 1 || c2 <= 1 ? equality(Statement::AdditivityCodimLE1)
                                     : not_applicable(Statement::AdditivityCodimLE1, pa));
    const bool codim2 = pa.d1.lower >= 2 && pa.d2.lower >= 2 && std::min(c1, c2) == 2 &&
                        pa.center1 && pa.center2;
    out.push_back(codim2 ? equality(Statement::AdditivityCodim2)
                         : not_applicable(Statement::AdditivityCodim2, pa));
  }
  // Rank-2 factors need no dimension hypothesis.
  out.push_back(n1 == 2 && n2 == 2 ? equality(Statement::WeylAnalogue)
                                   : not_applicable(Statement::WeylAnalogue, pa));
  return out;
}

Verdict check_superadditivity(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                              const DimensionOptions& opts) {
  return check_superadditivity(analyze_pair(a, b, MergeMode::shared, opts));
}

Verdict check_upper_bound(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                          const DimensionOptions& opts) {
  return check_upper_bound(analyze_pair(a, b, MergeMode::shared, opts));
}

Verdict check_strict(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                     const DimensionOptions& opts) {
  return check_strict(analyze_pair(a, b, MergeMode::shared, opts));
}

std::vector<Verdict> check_additivity(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                                      const DimensionOptions& opts) {
  return check_additivity(analyze_pair(a, b, MergeMode::shared, opts));
}

Verdict check_weyl_chain(const std::vector<MultiparameterMatrix>& factors,
                         const DimensionOptions& opts) {
  Verdict v;
  v.statement = Statement::WeylAnalogue;
  if (factors.empty()) throw std::invalid_argument("check_weyl_chain: no factors");
  const bool met = std::all_of(factors.begin(), factors.end(),
                               [](const MultiparameterMatrix& f) { return f.rank() == 2; });
  v.hypotheses_met = v.applies = met;

  std::vector<DimensionResult> dims;
  for (const auto& f : factors) dims.push_back(dimension(f, opts));
  MultiparameterMatrix product = factors.front();
  Sublattice hint = dims.front().witness;
  for (std::size_t j = 1; j < factors.size(); ++j) {
    product = tensor(product, factors[j], MergeMode::shared);
    hint = block_sum(hint, dims[j].witness);
  }
  DimensionOptions topts = opts;
  topts.hints.push_back(hint);
  const DimensionResult dt = dimension(product, topts);

  int lo = 0, hi = 0;
  v.data["factor_dims"] = io::Json::array();
  for (const auto& d : dims) {
    lo += d.lower;
    hi += d.upper;
    v.data["factor_dims"].push_back(io::to_json(d));
  }
  v.data["sum_of_dims"] = {lo, hi};
  v.data["tensor_dim"] = io::to_json(dt);
  if (!met) {
    v.conclusion = Outcome::holds;
    return v;
  }
  v.conclusion = equal_to(dt, lo, hi);
  if (v.conclusion == Outcome::violated)
    for (const auto& f : factors) v.instances.push_back(io::serialize(f));
  return v;
}

io::Json to_json(const Verdict& v) {
  io::Json j;
  j["statement"] = to_string(v.statement);
  j["hypotheses_met"] = v.hypotheses_met;
  j["applies"] = v.applies;
  j["conclusion"] = to_string(v.conclusion);
  j["data"] = v.data;
  if (!v.instances.empty()) j["instances"] = v.instances;
  return j;
}

// ---------------------------------------------------------------------------
// campaign

DimensionOptions campaign_dimension_options() {
  DimensionOptions o;
  o.node_budget = 4000;
  o.combo_samples = 32;
  return o;
}

const Tally& Report::tally(Statement s) const {
  for (const auto& [st, t] : tallies)
    if (st == s) return t;
  throw std::out_of_range("Report::tally: unknown statement");
}

std::size_t Report::total_violations() const {
  std::size_t n = oracle_anomalies.size();
  for (const auto& [s, t] : tallies) n += t.violated;
  return n;
}

std::pair<MultiparameterMatrix, MultiparameterMatrix> campaign_pair(const CampaignConfig& cfg,
                                                                    std::size_t trial) {
  if (cfg.max_rank == 0) throw std::invalid_argument("campaign: max_rank must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> rank(1, cfg.max_rank);
  std::uniform_int_distribution<std::size_t> free(std::min<std::size_t>(1, cfg.max_free), cfg.max_free);
  const std::size_t n1 = rank(rng), k1 = free(rng);
  const std::size_t n2 = rank(rng), k2 = free(rng);
  const std::uint64_t s1 = rng(), s2 = rng();
  return {gen_random(n1, k1, cfg.torsion_order, cfg.exponent_bound, s1),
          gen_random(n2, k2, cfg.torsion_order, cfg.exponent_bound, s2)};
}

TrialResult run_trial(const CampaignConfig& cfg, std::size_t trial) {
  const auto [a, b] = campaign_pair(cfg, trial);
  const PairAnalysis pa = analyze_pair(a, b, cfg.mode, cfg.dim_opts);
  TrialResult out;
  out.verdicts = {check_superadditivity(pa), check_upper_bound(pa), check_strict(pa)};
  for (auto& v : check_additivity(pa)) out.verdicts.push_back(std::move(v));
  out.tensor_dim = pa.dt;
  if (cfg.oracle_bound > 0) {
    try {
      out.oracle = brute_force_dimension(pa.product, cfg.oracle_bound);
    } catch (const ResourceLimitError&) {
      // pool too large for this trial; left unchecked
    }
  }
  if (out.oracle && *out.oracle > pa.dt.upper)
    out.instances = {io::serialize(pa.first), io::serialize(pa.second), io::serialize(pa.product)};
  return out;
}

Report run_campaign(const CampaignConfig& cfg) {
  std::vector<TrialResult> results(cfg.trials);
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cfg.trials, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) {
          try {
            results[i] = run_trial(cfg, i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = cfg.trials;
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);

  Report r;
  r.config = cfg;
  for (Statement s : all_statements) r.tallies.emplace_back(s, Tally{});
  auto slot = [&](Statement s) -> Tally& {
    for (auto& [st, t] : r.tallies)
      if (st == s) return t;
    throw std::logic_error("missing tally");
  };
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<bool> seen(std::size(all_statements), false);
    const TrialResult& tr = results[i];
    if (tr.oracle) {
      ++r.oracle_checked;
      if (*tr.oracle >= tr.tensor_dim.lower) ++r.oracle_reached_lower;
      if (*tr.oracle > tr.tensor_dim.upper) r.oracle_anomalies.push_back({i, *tr.oracle, tr.tensor_dim, tr.instances});
    }
    for (const auto& v : tr.verdicts) {
      seen[static_cast<std::size_t>(v.statement)] = true;
      Tally& t = slot(v.statement);
      if (!v.applies) {
        ++t.not_applicable;
        continue;
      }
      switch (v.conclusion) {
        case Outcome::holds: ++t.holds; break;
        case Outcome::violated:
          ++t.violated;
          r.anomalies.push_back({i, v});
          break;
        case Outcome::inconclusive: ++t.inconclusive; break;
      }
    }
    for (Statement s : all_statements)
      if (!seen[static_cast<std::size_t>(s)]) ++slot(s).not_applicable;
  }
  return r;
}

io::Json to_json(const Report& r) {
  io::Json j;
  const CampaignConfig& c = r.config;
  j["config"] = {{"trials", c.trials},
                 {"seed", c.seed},
                 {"max_rank", c.max_rank},
                 {"max_free", c.max_free},
                 {"exponent_bound", c.exponent_bound},
                 {"torsion_order", c.torsion_order},
                 {"mode", c.mode == MergeMode::shared ? "shared" : "disjoint"},
                 {"node_budget", c.dim_opts.node_budget},
                 {"search_bound", c.dim_opts.search_bound},
                 {"combo_samples", c.dim_opts.combo_samples},
                 {"oracle_bound", c.oracle_bound}};
  j["statements"] = io::Json::object();
  for (const auto& [s, t] : r.tallies)
    j["statements"][to_string(s)] = {{"holds", t.holds},
                                     {"violated", t.violated},
                                     {"inconclusive", t.inconclusive},
                                     {"not_applicable", t.not_applicable}};
  j["oracle"] = {{"checked", r.oracle_checked},
                 {"reached_lower", r.oracle_reached_lower},
                 {"above_upper", r.oracle_anomalies.size()}};
  j["violations"] = r.total_violations();
  j["anomalies"] = io::Json::array();
  for (const auto& a : r.anomalies) {
    io::Json e = to_json(a.verdict);
    e["trial"] = a.trial;
    j["anomalies"].push_back(std::move(e));
  }
  for (const auto& a : r.oracle_anomalies) {
    io::Json e;
    e["statement"] = "OracleWithinUpper";
    e["trial"] = a.trial;
    e["oracle"] = a.oracle;
    e["tensor_dim"] = io::to_json(a.tensor_dim);
    e["instances"] = a.instances;
    j["anomalies"].push_back(std::move(e));
  }
  return j;
}

}  // namespace qtorus::harness
