#pragma once

#include "nilpot/quotient.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilpot {

// Symbolic search for a commuting pair z1, z2 with independent linear parts,
//   z_i = sum_j alpha_{ji} y_j + sum_{kappa != 2, l < kappa} beta_{kl i} [y_kappa, y_l],
// in a class-3 rank-4 quotient. [z1,z2] = 0 is expanded coordinate-wise into
// polynomial equations over the alpha/beta unknowns; the decision is an
// exhaustive case split on the vanishing pattern of the eight alpha variables.

// Variable ids: 0..7 alpha(j,i) = 2(j-1)+(i-1); 8..17 beta(pair,i).
inline constexpr int kNumAlpha = 8;
std::string obstruction_var_name(int id);

struct ObsEquation {
    std::map<std::pair<int, int>, Rat> coeffs; // monomial (va<vb) -> coefficient
    int coordinate;                            // adapted basis index the equation came from

    std::string pretty() const;
    void normalize(); // integer content 1, first monomial positive
};

struct ObstructionReport {
    enum class Verdict { Unsat, Sat, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::vector<ObsEquation> equations;
    long cases_total = 0;
    long cases_eliminated = 0;
    std::map<std::string, long> elimination_reasons;
    // Sat: a verified witness pair (commuting, independent linear parts)
    std::optional<std::pair<LieElement, LieElement>> witness;
};

ObstructionReport commuting_pair_obstruction(const QuotientAlgebra &q);

} // namespace nilpot
