#pragma once

// Instance generators and checkers for the tensor-product dimension
// statements. Every checker compares certified intervals, so an unconverged
// search can only ever produce `inconclusive`, never `violated`.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/dimension.hpp"
#include "qtorus/instance_io.hpp"
#include "qtorus/pairing.hpp"

namespace qtorus::harness {

// ---- generators -----------------------------------------------------------

/// lambda_ij = q_(i,j) for i < j, all generators independent, m = 1.
MultiparameterMatrix gen_independent(std::size_t n);
/// (gen_independent(n), its transpose) over the same value group.
std::pair<MultiparameterMatrix, MultiparameterMatrix> gen_transpose_pair(std::size_t n);
/// Seeded exponents in [-bound, bound] over q1..qk, torsion uniform in [0, m).
MultiparameterMatrix gen_random(std::size_t n, std::size_t k, std::int64_t m, int exponent_bound,
                                std::uint64_t seed);
MultiparameterMatrix gen_commutative(std::size_t n);
/// Rank 2h with lambda_{2i-1,2i} = q for one generator q: h hyperbolic planes.
MultiparameterMatrix gen_symplectic(std::size_t h, const std::string& q = "q");

// ---- verdicts -------------------------------------------------------------

enum class Statement {
  Superadditivity,
  UpperBound,
  WeakUpperBound,
  StrictUpperBound,
  AdditivityCodimLE1,
  AdditivityCodim2,
  WeylAnalogue,
};
inline constexpr Statement all_statements[] = {
    Statement::Superadditivity,    Statement::UpperBound,       Statement::WeakUpperBound,
    Statement::StrictUpperBound,   Statement::AdditivityCodimLE1, Statement::AdditivityCodim2,
    Statement::WeylAnalogue};
const char* to_string(Statement s);

enum class Outcome { holds, violated, inconclusive };
const char* to_string(Outcome o);

struct Verdict {
  Statement statement = Statement::Superadditivity;
  bool hypotheses_met = false;
  /// False when the hypotheses fail and the statement says nothing.
  bool applies = false;
  Outcome conclusion = Outcome::inconclusive;
  io::Json data;
  /// Serialized factors; filled for violated verdicts.
  std::vector<io::Json> instances;
};

/// Dimensions shared by all pair checkers.
struct PairAnalysis {
  MultiparameterMatrix first;
  MultiparameterMatrix second;
  MultiparameterMatrix product;
  DimensionResult d1, d2, dt;
  bool center1 = false, center2 = false;
};

/// Dimensions of both factors and of their tensor product. The tensor search
/// is seeded with the block sum of the factor witnesses.
PairAnalysis analyze_pair(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                          MergeMode mode = MergeMode::shared, const DimensionOptions& opts = {});

Verdict check_superadditivity(const PairAnalysis& pa);
/// UpperBound when both factors have codim >= 1, WeakUpperBound otherwise.
Verdict check_upper_bound(const PairAnalysis& pa);
Verdict check_strict(const PairAnalysis& pa);
/// One verdict per additivity statement; `applies` marks those whose
/// hypotheses hold.
std::vector<Verdict> check_additivity(const PairAnalysis& pa);

Verdict check_superadditivity(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                              const DimensionOptions& opts = {});
Verdict check_upper_bound(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                          const DimensionOptions& opts = {});
Verdict check_strict(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                     const DimensionOptions& opts = {});
std::vector<Verdict> check_additivity(const MultiparameterMatrix& a, const MultiparameterMatrix& b,
                                      const DimensionOptions& opts = {});

/// Tensor of s rank-2 factors: dim equals the sum of the factor dims.
Verdict check_weyl_chain(const std::vector<MultiparameterMatrix>& factors,
                         const DimensionOptions& opts = {});

io::Json to_json(const Verdict& v);

// ---- campaign -------------------------------------------------------------

/// Smaller node budget than the interactive default so trials stay fast.
DimensionOptions campaign_dimension_options();

struct CampaignConfig {
  std::size_t trials = 500;
  std::uint64_t seed = 7;
  std::size_t max_rank = 3;
  std::size_t max_free = 2;
  int exponent_bound = 2;
  std::int64_t torsion_order = 1;
  MergeMode mode = MergeMode::shared;
  DimensionOptions dim_opts = campaign_dimension_options();
  /// Entry bound for the brute-force cross-check of every tensor dimension;
  /// 0 disables it. Trials whose pool is too large are skipped.
  int oracle_bound = 1;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct Tally {
  std::size_t holds = 0, violated = 0, inconclusive = 0, not_applicable = 0;
};

struct Anomaly {
  std::size_t trial = 0;
  Verdict verdict;
};

/// Brute force found more commuting vectors than the certified upper bound.
struct OracleAnomaly {
  std::size_t trial = 0;
  int oracle = 0;
  DimensionResult tensor_dim;
  std::vector<io::Json> instances;
};

struct TrialResult {
  std::vector<Verdict> verdicts;
  DimensionResult tensor_dim;
  std::optional<int> oracle;  // brute-force value at oracle_bound, when run
  std::vector<io::Json> instances;
};

struct Report {
  CampaignConfig config;
  std::vector<std::pair<Statement, Tally>> tallies;
  std::vector<Anomaly> anomalies;
  std::size_t oracle_checked = 0;
  /// Trials where the oracle reached the certified lower bound.
  std::size_t oracle_reached_lower = 0;
  std::vector<OracleAnomaly> oracle_anomalies;

  const Tally& tally(Statement s) const;
  std::size_t total_violations() const;
};

/// The instance pair used for one trial, reproducible from (config, trial).
std::pair<MultiparameterMatrix, MultiparameterMatrix> campaign_pair(const CampaignConfig& cfg,
                                                                    std::size_t trial);
/// All verdicts for one trial plus the oracle cross-check.
TrialResult run_trial(const CampaignConfig& cfg, std::size_t trial);

Report run_campaign(const CampaignConfig& cfg);
io::Json to_json(const Report& r);

}  // namespace qtorus::harness
