#pragma once

// Formula-level constructions between logic fragments and subshift
// presentations.

#include "tesselogic/grid.hpp"
#include "tesselogic/logic.hpp"

namespace tesselogic {

/// Quantifier-free formula true at `z` iff p occurs there (p is read from its
/// canonical translate).
Expr occurrence_formula(const Pattern& p, const std::string& z = "z");

/// Forbidden colorings of the window spanned by the term offsets of the
/// single-variable matrix.
SFT sft_of_universal(const Formula& f, const Alphabet& alphabet);
Formula formula_of_sft(const SFT& s);

/// Replaces universal set quantifiers by conjunctions over sound assignments,
/// innermost first. The result is universal first-order.
Formula eliminate_so_universal(const Formula& f, bool simplify_result = false);

Formula formula_atmost(const Pattern& p, int k);

enum class CountMode { Exact, AtLeast };
Formula formula_count(const Pattern& p, int k, CountMode mode);

/// Union of two formulas of shape ∃X̄ (∀z φ1) ∧ (∃z̄ φ2), with a selector set
/// that is either empty or full.
Formula combine_union(const Formula& f, const Formula& g);

/// At most k occurrences of p, in C-form.
Formula soficform_atmost(const Pattern& p, int k);

/// Merges the universal conjuncts of ∃X̄ ⋀(∀v ψ) into one ∀x.
Formula fuse_universal(const Formula& f);

struct Prop1Image {
  Formula formula;
  ProjectionMap proj;  // Q' -> Q
};

/// Set variables become colour bits: Q' = Q × {0,1}^n with names like "W01".
Prop1Image prop1_forward(const Formula& f, const Alphabet& alphabet);
Formula prop1_backward(const Formula& f, const ProjectionMap& pi);

SoficPresentation sofic_of_cform(const Formula& f, const Alphabet& alphabet);
Formula formula_of_sofic(const SoficPresentation& s);

Formula fin_formula(const std::string& s_var);
Formula subshift_normal_form(const Formula& f, const Alphabet& alphabet);

}  // namespace tesselogic
