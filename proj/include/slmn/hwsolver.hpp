#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slmn/algebra.hpp"
#include "slmn/linalg.hpp"
#include "slmn/tensor.hpp"
#include "slmn/tensorops.hpp"
#include "slmn/weights.hpp"

namespace slmn {

/// Adjoint action on a tensor with any V/V* signature: slot-wise Leibniz rule
/// with the Koszul prefix sign when an odd Z passes over odd slot content.
SuperTensor adjoint_act(Dims mn, const SuperMatrix& z, const SuperTensor& t);

/// Action of the quadratic Casimir through the adjoint action on a tensor
/// power; on a highest weight vector of weight lam this is
/// casimir_eigenvalue(lam) times the identity.
SuperTensor casimir_apply(const CasimirTensor& cas, const SlBasis& basis, const SuperTensor& t);
SuperTensor casimir_apply(Dims mn, const SuperTensor& t);

struct SubspaceBasis {
  Dims mn;
  Signature signature;
  std::vector<SuperTensor> vectors;

  int dim() const { return static_cast<int>(vectors.size()); }
};

/// Exact kernel of the stacked simple-raising conditions on the lam-weight
/// space of the k-th tensor power of the adjoint representation.
SubspaceBasis highest_weight_vectors(Dims mn, int k, const Weight& lam);

/// Same kernel computed with all positive root vectors instead of just the
/// simple ones (they generate n^+, so the two must agree; kept as a fixture).
SubspaceBasis highest_weight_vectors_full_nplus(Dims mn, int k, const Weight& lam);

struct WeightSpaceEntry {
  Weight wt;
  int weight_dim = 0;
  int hwv_dim = 0;
};

struct WeightSpaceReport {
  Dims mn;
  std::vector<WeightSpaceEntry> symmetric;
  std::vector<WeightSpaceEntry> antisymmetric;

  std::vector<WeightSpaceEntry> nonzero_symmetric() const;
  std::vector<WeightSpaceEntry> nonzero_antisymmetric() const;
};

/// Weights as coordinate arrays of "p/q" strings, per part.
std::string weight_space_report_json(const WeightSpaceReport& r);

/// Full scan of the second tensor power: computes the exact highest weight
/// vector dimensions at every occurring weight, split into the symmetric and
/// antisymmetric parts.
WeightSpaceReport verify_tensor_square(Dims mn);

/// The seven summand highest weights, with the n=1 label substitution
/// (delta_{n-1} replaced by eps_m).
struct Theorem1Weights {
  std::vector<Weight> symmetric;    // 4 entries
  std::vector<Weight> antisymmetric;  // 3 entries
};
Theorem1Weights theorem1_weights(Dims mn);

/// Candidate highest weights eps_1 - delta_n + mu (mu a root or zero) that are
/// dominant regular, split into the allowed seven-summand values and the
/// excluded remainder.
struct Lemma3Weights {
  std::vector<Weight> allowed;
  std::vector<Weight> excluded;
};
Lemma3Weights lemma3_weights(Dims mn);

struct ResourceCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Beta3Options {
  long mem_cap_mb = 2048;
  int jobs = 1;
  bool force_exact = false;  // disable the multi-modular acceleration
};

struct Beta3Report {
  Dims mn;
  long dim_g3 = 0;        // (dim g)^3
  long dim_beta3 = 0;     // = dim of the L(lambda^3)-isotypic component
  long dim_I3 = 0;
  int hwv_count = 0;
  std::vector<Weight> hwv_weights;
  bool hwv_is_lambda3 = false;
  bool direct_sum_ok = false;  // per-weight rank accounting all passed
  bool pass = false;
  long estimated_bytes = 0;
};

std::string beta3_report_json(const Beta3Report& r);

/// Exact certification of the k=3 Cartan-power split: beta_3 (the
/// intersection (beta_2 (x) g) cap (g (x) beta_2)) contains exactly one
/// highest weight line, of weight lambda^3, and together with
/// I_3 = I_2 (x) g + g (x) I_2 fills the full cube by exact rank accounting.
Beta3Report beta3_check(Dims mn, const Beta3Options& opts = {});

}  // namespace slmn
