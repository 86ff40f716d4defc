#pragma once

#include "nilpot/io.hpp"
#include "nilpot/malcev.hpp"
#include "nilpot/obstruction.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace nilpot {

struct VerifyOptions {
    std::optional<std::filesystem::path> cache_dir;
    TableEngine engine = TableEngine::Auto;
};

struct Report {
    std::string check;
    bool passed = false;
    ordered_json witnesses = ordered_json::object();
    double timings_ms = 0.0;
};

ordered_json report_to_json(const Report &r, bool include_timings = true);

// Laws of a variety, materialized over their own free algebra. The spec's
// rank may exceed the model rank; substitution instantiates the variables.
struct VarietySpec {
    int n = 0;
    int c = 0;
    std::vector<LieElement> laws;
    std::vector<std::shared_ptr<const BchContext>> law_ctxs; // keepalive for laws
};

// [[x1,x2],[x3,x4]] over L_{4,4}; the metabelian-nilpotent test model.
void add_metabelian_law(VarietySpec &spec, const VerifyOptions &opts = {});

// Load laws from a JSON array of LieElement exchange documents.
void load_laws(VarietySpec &spec, const std::filesystem::path &file,
               const VerifyOptions &opts = {});

// L_{n,c} with H = <x_1..x_n> under o: graded ring over Q vs associated
// graded vs the algebra itself, with identical structure constants.
Report check_free_model(int n, int c, const VerifyOptions &opts = {});

// Theorem A for the variety: eta iso on generators, Magnus, grad^(l) = L,
// full invariance of the verbal ideal.
Report check_theorem_a(const VarietySpec &spec, const VerifyOptions &opts = {});

// Consecutive-class epimorphisms d -> d-1 for classes spec.c .. c_max with
// kernel = gamma_d of the d-model.
Report check_tower(const VarietySpec &spec, int c_max, const VerifyOptions &opts = {});

// The complete section-5 counterexample.
Report run_example_5(const VerifyOptions &opts = {});

// Obstruction wrapped as a Report (used by run_example_5 and the controls).
Report check_obstruction(const QuotientAlgebra &q, const std::string &name);

// Shared helpers for the harness and tests.
QuotientAlgebra example5_quotient(const VerifyOptions &opts = {});
bool graded_ring_matches_lie_grad(const QuotientAlgebra &q, const GradedLieRing &g,
                                  ordered_json *witness = nullptr);
bool identity_regrading_matches(const QuotientAlgebra &q, const GradedAlgebra &g);

} // namespace nilpot
