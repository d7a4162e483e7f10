// Prints the first levels of the real Woods-Saxon well and of its trigonometric PT
// map, then confirms each energy by shooting on the s-space equation.

#include <cstdio>

#include "nudirac/oracle.hpp"

using namespace nudirac;

namespace {

void show(const PotentialSpec& spec, int n_hi) {
  std::printf("%s  V0=%g q=%g alpha=%g m=%g\n", std::string(variant_name(spec.variant())).c_str(),
              underlying_real(spec).V0().real(), underlying_real(spec).q().real(),
              underlying_real(spec).alpha().real(), spec.m());
  std::printf("  n br  %-22s %-22s %-9s %s\n", "Re E", "Im E", "|dE| shot", "normalizable");
  for (int n = 0; n <= n_hi; ++n) {
    for (int br : {1, -1}) {
      const EnergyLevel L = dirac_energy(spec, n, br);
      const ShootResult r = shoot_quantize(spec, perturbed_guess(L.E));
      std::printf("  %d %+d  %-22.15g %-22.15g %-9.1e %s\n", n, br, L.E.real(), L.E.imag() + 0.0, std::abs(r.E - L.E),
                  L.normalizable ? "yes" : "no");
    }
  }
  const LevelWindow w = admissible_levels(spec);
  if (w.empty()) std::printf("  level window: empty\n");
  else std::printf("  level window: n = %d..%d\n", *w.n_min, *w.n_max);
}

}  // namespace

int main() {
  show(PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0), 2);
  std::printf("\n");
  const PotentialSpec pt = complexify(PotentialSpec::real_ws(-5.0, 1.0, 1.0, 1.0), Variant::PTTrig);
  show(pt, 2);

  const SpinorState st = make_spinor_state(pt, dirac_energy(pt, 0, -1));
  std::printf("\nPT ground state, lower branch: E = %.12g, N = %.12g\n", st.level.E.real(), st.N().real());
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const cplx u = upper_u(st, s), w = lower_w(st, s);
    std::printf("  s=%.1f  u=%+.6e%+.6ei  w=%+.6e%+.6ei\n", s, u.real(), u.imag(), w.real(), w.imag());
  }
}
