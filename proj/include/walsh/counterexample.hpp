#pragma once

// Divergence machinery: the orders p_n, the regions Omega_n on which F_{p_n}
// behaves like 1/x, tensor Dirichlet test functions, lower bounds for the
// operator norm L_Q -> L_1, and the signed-translate construction used to
// push the measure of large values up.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "walsh/dyadic.hpp"
#include "walsh/norms.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// p_n = 2^{2n} + 2^{2n-2} + ... + 1 = (4^{n+1} - 1) / 3, for 0 <= n <= 31.
std::uint64_t p_seq(int n);

/// Constants in m~ = floor(l_{p_{m_*} - 1} / divisor - offset).
struct TildeConstants {
  double divisor = 16.0;
  double offset = 32768.0;
};

/// m~ for m >= 2 with m_* = floor(m / 2). Negative at every reachable scale
/// with the default constants; the value is returned, not rejected.
std::int64_t tilde_m(int m, TildeConstants constants = {});

/// The value l_{p_{m_*} - 1} must exceed before m~ > 1, i.e. the bound that
/// defines m_0: divisor * (offset + 2).
double tilde_m_threshold(TildeConstants constants = {});

struct OmegaBand {
  int m;
  double lo;  // 2^-(m+1) + 2^-(m + m~)
  double hi;  // 2^-m
  std::int64_t tilde;
  bool empty;
};

/// Omega_n = union over m = n..2n of [2^-(m+1) + 2^-(m+m~), 2^-m).
struct OmegaRegion {
  int n = 0;
  std::optional<int> tilde_override;
  std::vector<OmegaBand> bands;

  bool empty() const;
  bool contains(double x) const;
};

/// With no override every band uses the faithful m~(m); an override t uses
/// m~ = t on all bands. Bands with lo >= hi are kept and flagged empty.
OmegaRegion omega_region(int n, std::optional<int> tilde_override = std::nullopt,
                         TildeConstants constants = {});

struct BandScan {
  int m;
  double lo;
  double hi;
  bool empty;
  std::size_t points;
  double min;     // min of x |F_{p_n}(x)| over grid points in the band
  double argmin;
};

struct ScanReport {
  int n;
  int resolution;
  std::string mode;  // "faithful" or "override"
  std::optional<int> tilde;
  bool empty;
  double min;
  double argmin;
  std::vector<BandScan> per_band;

  nlohmann::json to_json() const;
};

/// Evaluates x |F_{p_n}(x)| at every grid point x = c / 2^K inside the
/// region. Needs p_n <= 2^K.
ScanReport lemma_gg_scan(int n, int resolution, const OmegaRegion& region);

/// prod_{i in B} D_{2^{2n+1}}(x_i) / 2, constant 1 along the axes of B'.
DyadicFunction tensor_dirichlet_test(int n, const AxisSubset& b, const std::vector<int>& resolution);

/// Same product without the 1/2 factors.
DyadicFunction tensor_dirichlet(int n, const AxisSubset& b, const std::vector<int>& resolution);

/// max |(L_{p_n,B} o R_{p_n,B'})(test) - 2^{-|B|} prod_{i in B} F_{p_n}(x_i)|.
double pointwise_identity_check(int n, const AxisSubset& b, const std::vector<int>& resolution);

struct KernelNormRow {
  int n;
  std::uint64_t order;  // p_n
  double l1;
  double ratio;  // l1 / n
};

/// ||F_{p_n}||_1 for n = 1..n_max at resolution 2 n_max + 2.
std::vector<KernelNormRow> kernel_norm_growth(int n_max);

struct OperatorBound {
  int n;
  double mean_l1;     // ||(L o R)(test)||_1
  double test_norm;   // ||test||_{L_Q}
  double ratio;       // mean_l1 / test_norm, a lower bound for the operator norm
  double formula;     // 2^{2n|B|} n^{|B|} / Q(2^{2n|B|})
};

/// Computes the ratio from one-axis factors: the test function and the mean
/// are tensor products, so the L1 norm is a product of one-axis norms and
/// the distribution of |test| is the product of one-axis distributions.
OperatorBound operator_lower_bound(int n, const YoungFunction& q, const AxisSubset& b);

/// The same ratio evaluated on a full d-dimensional grid (small n only).
OperatorBound operator_lower_bound_on_grid(int n, const YoungFunction& q, const AxisSubset& b,
                                           const std::vector<int>& resolution);

/// Q(2^{2n|B|}) / (2^{2n|B|} n^{|B|-1}); tends to 0 along n for Q outside
/// L log^{|B|-1} L.
double cond1_ratio(const YoungFunction& q, int n, int b_size);
/// Q(2^{2n|B|}) / 2^{|B|(2n+1)}; at least 1 is what keeps xi in the unit ball.
double cond1_floor(const YoungFunction& q, int n, int b_size);

struct TranslateConfig {
  std::vector<std::vector<std::uint64_t>> translations;
  std::vector<int> signs;

  std::size_t r() const { return signs.size(); }
  void validate(const Grid& grid) const;
};

struct XiParams {
  int n;
  AxisSubset b;
  YoungFunction q;
};

struct XiResult {
  DyadicFunction xi;
  DyadicFunction m;
  double nu;
  double m_sup;
  double m_sup_bound;  // 2^{|B|(2n+1)}
  double m_l1;
  double xi_luxemburg;
  bool sup_ok;
  bool l1_ok;
  bool unit_ball_ok;
};

/// r_k ~ 2^{n(2|B|-1)} / n^{|B|-1} with proportionality constant 1.
std::size_t default_translate_count(int n, int b_size);

TranslateConfig random_translate_config(std::size_t r, const Grid& grid, std::uint64_t seed);

/// M(x) = (1/r) sum_i eps_i prod_{j in B} D_{2^{2n+1}}(E_i^(j) + x_j),
/// xi = 2^{2|B|n - 1} / Q(2^{2n|B|}) M and nu = 2^{n(4|B|-1)-1} / (r Q(2^{2n|B|})).
XiResult build_xi(const XiParams& params, const TranslateConfig& config, const std::vector<int>& resolution,
                  double tolerance = 1e-9);

struct SearchResult {
  std::optional<TranslateConfig> best;
  double measure = 0.0;
  double threshold = 0.0;
  std::size_t trials = 0;
};

/// Random search over r signed translates for a large value of
/// mes{|(L o R)(sum_i eps_i f(E_i + .))| > c 2^{n(2|B|-1)}} with
/// f = prod_{i in B} D_{2^{2n+1}}. Trial t draws from a generator seeded by
/// (seed, t), so results do not depend on scheduling.
SearchResult search_signed_translates(int n, const AxisSubset& b, std::size_t r, std::size_t trials,
                                      std::uint64_t seed, const std::vector<int>& resolution,
                                      double threshold_scale = 1.0);

/// mes{x : |(L o R)(prod_{i in B} D_{2^{2n+1}})(x)| >= c 2^{n(2|B|-1)}}.
double est1_measure(int n, const AxisSubset& b, const std::vector<int>& resolution, double threshold_scale);

/// measure * 2^{n(2|B|-1)} / n^{|B|-1}.
double est1_ratio(int n, int b_size, double measure);

/// Smallest per-axis resolution that fits both 2^{2n+1} and p_n.
int counterexample_resolution(int n);

}  // namespace walsh
