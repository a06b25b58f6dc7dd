#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "framemul/multiplier.hpp"

namespace framemul {

// Distances between equally indexed families. The chain
// d_bessel <= d_l2 <= d_l1 always holds.
struct SimilarityReport {
    double d_sup = 0.0;     // max_k ||f_k - g_k||; poor as a frame similarity measure
    double d_l2 = 0.0;      // (sum_k ||f_k - g_k||^2)^{1/2}
    double d_l1 = 0.0;      // sum_k ||f_k - g_k||
    double d_bessel = 0.0;  // ||D_f - D_g||_op
};
SimilarityReport similarity(const VectorFamily& f, const VectorFamily& g);

// Frame-bound envelope predicted from the synthesis-operator distance
// mu: applicable when mu < sqrt(A_opt), and then the perturbed family
// is a frame with bounds inside [A(1 - mu/sqrt(A))^2, B(1 + mu/sqrt(B))^2].
struct PerturbationPrediction {
    double mu = 0.0;
    bool applicable = false;
    double predicted_lower = 0.0;
    double predicted_upper = 0.0;
};

struct PredictBoundsResult {
    PerturbationPrediction prediction;
    FrameReport perturbed;  // classify(g)
    // "lower-envelope": predicted_lower must stay below A_opt(g);
    // "upper-envelope": B_opt(g) must stay below predicted_upper.
    std::vector<BoundCertificate> certificates;  // empty when inapplicable
    std::optional<bool> riesz_inherited;         // set when the base family is a Riesz basis
};
PredictBoundsResult predict_bounds(const VectorFamily& f, const VectorFamily& g);

// Measured operator drifts under an l2-sense perturbation of size
// epsilon = d_l2(f, g): dC, dD <= epsilon always, and for epsilon <= 1
// dS <= epsilon (sqrt(B+1) + sqrt(B)). The S-drift constant is the sum
// form sqrt(B+1) + sqrt(B), the one the triangle-inequality derivation
// actually yields.
struct OperatorDrift {
    double epsilon = 0.0;
    double dC = 0.0;
    double dD = 0.0;
    double dS = 0.0;
    double dS_bound = 0.0;
    bool bounds_claimed = false;                 // epsilon <= 1
    std::vector<BoundCertificate> certificates;  // empty when not claimed
};
OperatorDrift operator_drift(const VectorFamily& f, const VectorFamily& g);

// What gets perturbed and which metric/norm pairing applies:
//   symbol_inf     symbol in l^inf   <-> operator norm
//   symbol_l2      symbol in l^2     <-> Hilbert-Schmidt norm
//   symbol_l1      symbol in l^1     <-> trace norm
//   family_uniform synthesis, sup    <-> trace norm   (factor ||m||_1)
//   family_l2      synthesis, l^2    <-> HS norm      (factor ||m||_2)
//   family_l1      synthesis, l^1    <-> operator norm (factor ||m||_inf)
//   joint          symbol + both families in the l^2 metrics <-> HS norm
enum class ContinuityMode {
    symbol_inf,
    symbol_l2,
    symbol_l1,
    family_uniform,
    family_l2,
    family_l1,
    joint,
};

const char* to_string(ContinuityMode mode);
ContinuityMode continuity_mode_from_string(const std::string& name);

struct ContinuityOptions {
    int steps = 8;
    double eps0 = 0.5;
    std::uint64_t seed = 0;
    // When absent, directions are drawn from GaussianRng(seed). One
    // direction per perturbed object is drawn up front and rescaled to
    // hit each step's distance exactly, so tables are comparable and
    // single-object modes are exactly linear in epsilon.
    std::optional<Symbol> symbol_direction;
    std::optional<VectorFamily> synthesis_direction;
    std::optional<VectorFamily> analysis_direction;  // joint mode only
};

struct ContinuityResult {
    ContinuityMode mode = ContinuityMode::symbol_inf;
    ConvergenceTable table;
    // Optimal upper bound of the perturbed synthesis family per step
    // (family and joint modes); converges to base_upper_bound.
    std::vector<double> perturbed_upper_bounds;
    double base_upper_bound = 0.0;
};

// Halving-distance experiment: step l uses eps_l = eps0 / 2^l; every
// row's measured difference is bounded by the mode's linear-in-eps
// estimate.
ContinuityResult continuity_experiment(const MultiplierSpec& spec, ContinuityMode mode,
                                       const ContinuityOptions& opts = {});

} // namespace framemul
