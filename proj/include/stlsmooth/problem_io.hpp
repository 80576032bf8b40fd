#pragma once

#include <string>
#include <string_view>

#include "stlsmooth/formula.hpp"
#include "stlsmooth/synthesis.hpp"

namespace stlsmooth {

/// Predicate definitions keyed by name:
///   {"type":"affine","c":[...],"b":0.5,"noise":[lo,hi]}
///   {"type":"box","channels":[i,j],"x":[lo,hi],"y":[lo,hi],"noise":[lo,hi]}
///   {"type":"ball","dims":[i,j],"center":[..],"radius":r,"noise":[lo,hi]}
/// Boxes register the macro `name` plus name_xlo/_xhi/_ylo/_yhi.
PredicateTable parse_predicates_json(std::string_view text, std::size_t q);

/// Adds s0..s{q-1} (mu = that channel) for every name not already taken.
void add_channel_predicates(PredicateTable& table);

/// Problem file: system, x0, T, formula, predicates, control_penalty,
/// smooth {srm,k1,k2,overrides,noise}, range_bound. The formula is parsed
/// against the predicates and rewritten to negation normal form.
SynthesisProblem parse_problem_json(std::string_view text);
SynthesisProblem load_problem(const std::string& path);

std::string read_text_file(const std::string& path);

/// SolveResult as JSON (u_star row per time step, error interval, trace).
std::string result_to_json(const SynthesisProblem& prob, const SolveResult& res);
/// The optimized composite signal in the signal CSV format.
std::string trajectory_csv(const SynthesisProblem& prob, const SolveResult& res);
/// iter,smooth_rho,exact_rho,L,U,grad_norm,smooth_cost
std::string trace_csv(const SolveResult& res);

}  // namespace stlsmooth
