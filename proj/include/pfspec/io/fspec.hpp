#pragma once

#include <string>

#include "pfspec/spectra/spectra.hpp"

namespace pfspec::io {

/**
 * Observable from a short text form:
 *
 *   fspec := [scalar '*'] atom
 *   atom  := '1' | 'h' | 'h^' n | 'Phi_' n ['+' | '-']
 *          | 'poly:' c0 ',' c1 ... | 'block:' c0 ',' ... '|' d0 ',' ...
 *
 * Phi_n is the n-th eigenfunction of the system (Phi_n+ / Phi_n- on the
 * golden-mean system). On the golden-mean system polynomial atoms become the
 * block pair (p, p). Malformed input raises ConfigError.
 */
spectra::Observable parse_fspec(const std::string& text, const symdyn::ShiftSystem& sys);

/// Polynomial degree of an observable (0 for the zero function).
int observable_degree(const spectra::Observable& f);

}  // namespace pfspec::io
