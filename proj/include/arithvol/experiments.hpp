#pragma once

// Desk-scale verifications of the volume, rescaling, reduction,
// compatibility, Fujita and Brunn-Minkowski statements.

#include "arithvol/intersect.hpp"
#include "arithvol/okounkov.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arithvol {

struct FlagSpec {
    bool at_infinity = false;               ///< P1Z only
    std::int64_t alpha = 0;                 ///< P1Z point [1 : alpha]
    std::array<std::int64_t, 3> line{0, 0, 1};   ///< P2Z
    std::array<std::int64_t, 3> point{1, 0, 0};  ///< P2Z

    friend bool operator==(const FlagSpec&, const FlagSpec&) = default;
};

Flag make_flag(const ArithmeticModel& model, std::int64_t p, const FlagSpec& spec);

struct ExperimentConfig {
    HermitianLineBundle bundle;
    std::optional<HermitianLineBundle> bundle2;  ///< second bundle for Brunn-Minkowski runs
    std::vector<std::int64_t> primes{7, 31, 101};
    FlagSpec flag;
    std::vector<std::int64_t> m_schedule{20};
    ImageMode mode = ImageMode::Auto;
    EnumerateOptions enumerate;
    LatticeOptions lattice;
    double tolerance = 1e-9;
    double envelope_slack = 2.0;     ///< multiplies c(L) / log p
    double epsilon_fraction = 0.05;  ///< Fujita epsilon as a fraction of the target
    std::vector<std::int64_t> fujita_n{1};
    std::int64_t fujita_k_max = 4;
    std::uint64_t seed = 0;
};

/// Throws InvalidArgument on an empty or non-increasing schedule, nonpositive
/// budgets or a non-prime in the prime list.
void validate(const ExperimentConfig& config);

struct TheoremARow {
    std::int64_t p = 0;
    std::int64_t m = 0;
    std::int64_t verified_count = 0;
    std::int64_t unknown_count = 0;
    Rational hull_volume = 0;
    double hull_volume_times_logp = 0.0;
    double target = 0.0;
    double gap = 0.0;
    double discretization_bound = 0.0;  ///< log p / m
    /// |floor(m c / log p) / m log p - c| for the witnessed family
    /// (Canonical, a = 1, alpha = 0, no twists); absent otherwise.
    std::optional<double> oracle_gap;
};

struct TheoremASummary {
    bool volumes_nondecreasing = true;  ///< per prime, along the schedule
    bool within_discretization = true;  ///< every gap <= log p / m + tolerance
    bool matches_oracle = true;         ///< every oracle gap reproduced
    double final_gap = 0.0;             ///< at the largest (p, m)
    double comparison_constant = 0.0;   ///< c(L) with A = L
    double envelope = 0.0;              ///< slack c(L) / log p at the largest p
    bool within_envelope = false;
    /// At the largest (p, m): #v(mL) log p / m^d against the midpoint of the
    /// h0 band over m^d.
    double count_ratio = 0.0;
    double hzero_lower = 0.0;
    double hzero_upper = 0.0;
    double hzero_mid_ratio = 0.0;
    double count_gap = 0.0;
    bool count_within_envelope = false;
};

struct TheoremAReport {
    HermitianLineBundle bundle;
    FlagSpec flag;
    std::vector<TheoremARow> rows;
    TheoremASummary summary;
    std::vector<RationalPolytope> hulls;  ///< one per row
};

/// Requires an ample-catalog bundle (NotAmpleInCatalog otherwise).
TheoremAReport run_theorem_a(const ExperimentConfig& config);

/// Fixed-header CSV, one row per (p, m).
std::string theorem_a_csv(const TheoremAReport& report);

/// Recomputes the derived columns and returns false on any mismatch.
bool self_consistent(const TheoremAReport& report);

/// Exact rescale: alpha = q + log n with rational q >= 0 and integer n >= 1.
struct LogShift {
    Rational q = 0;
    std::int64_t n = 1;

    friend bool operator==(const LogShift&, const LogShift&) = default;
};

double to_double(const LogShift& a);

struct RescalingRow {
    LogShift alpha;
    std::int64_t count = 0;          ///< #H0(mL)
    std::int64_t count_shifted = 0;  ///< #H0(mL(-alpha))
    std::int64_t rank = 0;
    double difference = 0.0;  ///< h0 - h0 shifted
    double bound = 0.0;       ///< (alpha + log 3) rank
    bool lower_holds = false;
    bool upper_holds = false;
};

struct RescalingReport {
    HermitianLineBundle bundle;
    std::int64_t m = 0;
    std::vector<RescalingRow> rows;
    bool all_hold = false;
};

RescalingReport verify_rescaling(const HermitianLineBundle& bundle, std::int64_t m, const std::vector<LogShift>& alphas,
                                 const EnumerateOptions& options = {});

struct ReductionReport {
    HermitianLineBundle bundle;
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t image_count = 0;  ///< #r_n(H0(mL))
    std::int64_t count = 0;        ///< #H0(mL)
    std::int64_t count_up = 0;     ///< #H0(mL(log 2))
    std::int64_t count_zn = 0;     ///< #H0(mL(-Z_n))
    std::int64_t count_low = 0;    ///< #H0(mL(log 2 - Z_n))
    double log_image = 0.0;
    double upper_bound = 0.0;
    double lower_bound = 0.0;
    bool upper_holds = false;
    bool lower_holds = false;
};

ReductionReport verify_reduction(const HermitianLineBundle& bundle, std::int64_t m, std::int64_t n,
                                 const EnumerateOptions& options = {});

struct CompatibilityReport {
    HermitianLineBundle bundle;
    std::int64_t m = 0;
    Flag flag;
    std::int64_t image_count = 0;               ///< #v(mL)
    std::vector<std::int64_t> restricted_counts;  ///< k = 0, 1, ... until empty
    std::int64_t restricted_total = 0;
    bool holds = false;
};

CompatibilityReport verify_compatibility(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                         const EnumerateOptions& options = {});

struct FujitaRow {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t product_count = 0;  ///< #V_{k,n} (distinct products)
    std::int64_t image_count = 0;    ///< #v(V_{k,n})
    Rational ratio = 0;              ///< image_count / (n k)^d
    std::optional<std::int64_t> full_count;  ///< #v(nkL) when in exact scope
    std::optional<Rational> full_ratio;
    bool inclusion_holds = true;  ///< v(V_{k,n}) is a subset of v(nkL) when known
};

struct FujitaReport {
    HermitianLineBundle bundle;
    Flag flag;
    std::vector<FujitaRow> rows;
    Rational reference_volume = 0;  ///< hull volume of the largest exact run
    double epsilon = 0.0;
    /// Per n: the ratio never decreases in k.
    bool ratio_nondecreasing = true;
};

FujitaReport verify_fujita_finite(const HermitianLineBundle& bundle, const Flag& flag,
                                  const std::vector<std::int64_t>& n_list, std::int64_t k_max,
                                  const EnumerateOptions& options = {}, double epsilon_fraction = 0.05);

struct TheoremBReport {
    HermitianLineBundle bundle1;
    HermitianLineBundle bundle2;
    Flag flag;
    std::int64_t m = 0;
    std::int64_t pair_count = 0;        ///< pairs of points tested
    std::int64_t inclusion_failures = 0;
    std::int64_t inclusion_unknown = 0;  ///< sums landing on unknown points
    bool inclusion_holds = false;
    BrunnMinkowskiReport hull_check;
    RationalPolytope hull1;
    RationalPolytope hull2;
    RationalPolytope hull_sum;  ///< hull of the image of m(L1 + L2)
    bool closed_form_available = false;
    InequalityCheck closed_form;
};

TheoremBReport run_theorem_b(const HermitianLineBundle& b1, const HermitianLineBundle& b2, const Flag& flag,
                             std::int64_t m, const OkounkovOptions& options = {});

struct SuiteReport {
    std::string name;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    double worst_slack = 0.0;  ///< smallest relative slack observed
    std::vector<std::string> failure_notes;
};

/// Random ample-catalog pairs (seeded) on P1Z and P2Z: Theorem B closed form,
/// the corollary inequalities and the volume bound.
SuiteReport inequality_sweep(std::uint64_t seed, int pairs, double tolerance = 1e-9);

/// Random lambda-balanced pairs: A^(d-2) (B - lambda A)^2 <= tolerance.
SuiteReport hodge_sweep(std::uint64_t seed, int pairs, double tolerance = 1e-9);

/// Closed form against quadrature on random Canonical pairs.
SuiteReport quadrature_crosscheck(std::uint64_t seed, int pairs, double tolerance = 1e-6);

}  // namespace arithvol
