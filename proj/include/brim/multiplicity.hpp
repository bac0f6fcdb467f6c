#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "brim/engine.hpp"
#include "brim/fit.hpp"
#include "brim/ideal.hpp"

namespace brim {

/// Condensed fit telemetry carried inside verification reports.
struct FitDiag {
    std::string role;
    bool stabilized = false;
    long long window_start = 0;
    long long window_end = 0;
    int advances = 0;
    int points_checked = 0;

    static FitDiag from(const std::string& role, const FitReport& r);
    nlohmann::ordered_json to_json() const;
};

/// Mixed multiplicities keyed by type vector (i_1..i_r), sum of entries = d.
using MixedTable = std::map<std::vector<int>, Int>;

/// Associated multiplicities e^0..e^{d+r-1} plus the fitted surface they came
/// from. Invariants enforced on construction: integers, descending,
/// e^{r-1} > 0, zero from index r on.
struct AssociatedResult {
    std::vector<Int> values;
    RatPoly poly = RatPoly(2);  // bivariate in (p, q)
    FitDiag fit;
};

struct VerificationReport {
    std::string identity;
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json lhs;
    nlohmann::ordered_json rhs;
    bool pass = false;
    bool experimental = false;
    std::vector<FitDiag> fits;

    nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json module_json(const ModuleSpec& C);

/// Hilbert-Samuel multiplicity e(R/I): d! times the leading coefficient of
/// the colength-of-powers fit. Throws on non-stabilization or non-integrality.
Int hs_multiplicity(const MonomialIdeal& I, const FitOptions& opts = {});

/// Buchsbaum-Rim multiplicity e(C): (d+r-1)! times the leading coefficient of
/// the lambda fit.
Int br_multiplicity(const ModuleSpec& C, const FitOptions& opts = {});

/// All mixed multiplicities of degree d from the multivariate colength fit.
MixedTable mixed_multiplicities(const ModuleSpec& C, const FitOptions& opts = {});

/// e^j(C) = coeff of p^{d+r-1-j} q^j in the Lambda surface times
/// (d+r-1-j)! j!. One automatic window enlargement on invariant violation.
AssociatedResult associated_multiplicities(const ModuleSpec& C, const FitOptions& opts = {});

/// E_{r-i+1} = sum over #A = i-1 of e(L_A); 1 <= i <= r.
Int E_term(const ModuleSpec& C, int i, const FitOptions& opts = {});

// --- identity verifications (hard: pass expected on every valid input) ---

/// e^{r-2}(C) = E_{r-1} - (d+1)(r-1) e(R/[I_1+...+I_r]); needs r >= 2.
VerificationReport verify_main_theorem(const ModuleSpec& C, const FitOptions& opts = {});

/// e^{r-1}(C) = e(R/[I_1+...+I_r]).
VerificationReport verify_last_multiplicity(const ModuleSpec& C, const FitOptions& opts = {});

/// e(C) = sum of all mixed multiplicities.
VerificationReport verify_kirby_rees_sum(const ModuleSpec& C, const FitOptions& opts = {});

/// For nested I_1 c I_2 c ... c I_r: e^j(C) = e(R/I_{j+1} + ... + R/I_r).
/// Containment checked generator-wise; violation throws std::invalid_argument.
VerificationReport verify_nested_chain(const ModuleSpec& C, int j, const FitOptions& opts = {});

/// For I_1..I_{r-1} c I_r: e^{r-2}(C) = e(R/[I_1+...+I_{r-1}] + R/I_r).
VerificationReport verify_corollary_largest(const ModuleSpec& C, const FitOptions& opts = {});

// --- open-question probes ---

/// Reports the exact q-degree of the fitted F_k against the conjectured bound
/// r-k-1. Experimental for k >= 3; proven (and asserted by tests) for k <= 2.
VerificationReport test_question_43(const ModuleSpec& C, int k, const FitOptions& opts = {});

/// Checks e^{r-j} = sum_{i=1}^j C(d+j-1, j-i) (-(r-i))^{j-i} E_{r-i+1} for
/// 1 <= j <= r. Experimental for j >= 3; a failure for j <= 2 throws (those
/// are theorems).
VerificationReport test_question_44(const ModuleSpec& C, int j, const FitOptions& opts = {});

// --- exact structural checks at fixed (p, q), used by `verify regions/props` ---

/// Partition of H_{p,q} into blocks: sum of all Lambda_{D_A^(k)} equals
/// Lambda(p,q), and each block with k <= r-2 splits into low + high parts.
VerificationReport verify_region_partition(const ModuleSpec& C, long long p, long long q);

/// Closed forms against direct region sums: the prefix-region formulas for
/// every k, and the low-block formula at every level.
VerificationReport verify_closed_forms(const ModuleSpec& C, long long p, long long q);

}  // namespace brim
