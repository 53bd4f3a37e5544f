#pragma once

#include "okh/diagram.hpp"
#include "okh/laurent.hpp"

namespace okh {

// Sum over states of (-1)^{d_s} q^{-(w + h)} (q + q^-1)^{circles}.
LaurentPoly bracket_state_sum(const LinkDiagram& d, int jobs = 0);

// The three diagrams of a skein relation at one crossing.
struct SkeinTriple {
  LinkDiagram plus, minus, zero;
};
SkeinTriple skein_triple(const LinkDiagram& d, int crossing);

// Checks q^2 <D+> - q^-2 <D-> = (q - q^-1) <D0>. Throws SiteMismatch unless
// some positive crossing of `plus` changes to `minus` and smooths to `zero`
// (up to relabelling).
bool verify_skein(const LinkDiagram& plus, const LinkDiagram& minus, const LinkDiagram& zero);

// Unoriented Kauffman bracket with writhe correction, A^2 -> -q.
LaurentPoly jones_via_kauffman(const LinkDiagram& d);

}  // namespace okh
