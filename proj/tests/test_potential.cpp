#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nudirac/potential.hpp"

using namespace nudirac;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Closed trigonometric / hyperbolic forms of the mapped potentials, used only as oracles.
cplx pt_closed(double V0, double q, double al, double x) {
  const double c = std::cos(al * x), s = std::sin(al * x);
  return -V0 / (q * q + 2.0 * q * c + 1.0) * cplx(q + c, -s);
}

cplx pseudo_closed(double V0, double q, double al, double x) {
  const double c = std::cos(al * x), s = std::sin(al * x);
  return -V0 / (q * q + 2.0 * q * s + 1.0) * cplx(q + s, c);
}

// Direct expansion of -iV0 e/(1 + iq e), e = e^{-alpha x}, written with hyperbolic functions.
cplx non_pt_closed(double V0, double q, double al, double x) {
  const double h = 2.0 * std::cosh(al * x) * std::cosh(al * x) - std::sinh(2.0 * al * x) - 1.0;  // e^{-2 alpha x}
  const double e = std::cosh(al * x) - std::sinh(al * x);                                         // e^{-alpha x}
  return -V0 * cplx(q * h, e) / (1.0 + q * q * h);
}

std::vector<double> grid(int n, double lo, double hi) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
  return xs;
}

}  // namespace

TEST(PotentialSpec, ConstructorsAndValidation) {
  const auto ws = PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0);
  EXPECT_EQ(ws.variant(), Variant::RealWS);
  EXPECT_EQ(ws.a(), cplx(1.0));
  EXPECT_THROW(PotentialSpec::real_ws(1.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(PotentialSpec::real_ws(1.0, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec::real_ws(1.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0, -1.0), DomainError);
  EXPECT_THROW(PotentialSpec(Variant::RealWS, {1.0, 1.0}, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec(Variant::ShiftedWS, 1.0, 2.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec(Variant::ShiftedHulthen, 1.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec(Variant::Exponential, 1.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_NO_THROW(PotentialSpec::exponential(1.0, 1.0, 1.0));
}

TEST(PotentialSpec, VariantNamesRoundTrip) {
  for (Variant v : {Variant::RealWS, Variant::ShiftedWS, Variant::ShiftedHulthen, Variant::Exponential,
                    Variant::PTTrig, Variant::NonPTComplex, Variant::PseudoHermitian})
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_FALSE(parse_variant("woods-saxon").has_value());
}

TEST(Complexify, ParameterMaps) {
  const auto base = PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0);
  const auto pt = complexify(base, Variant::PTTrig);
  EXPECT_EQ(pt.V0(), cplx(2.0));
  EXPECT_EQ(pt.q(), cplx(1.0));
  EXPECT_EQ(pt.alpha(), kI);
  const auto np = complexify(base, Variant::NonPTComplex);
  EXPECT_EQ(np.V0(), cplx(0.0, 2.0));
  EXPECT_EQ(np.q(), kI);
  EXPECT_EQ(np.alpha(), cplx(1.0));
  const auto ph = complexify(base, Variant::PseudoHermitian);
  EXPECT_EQ(ph.V0(), cplx(0.0, 2.0));
  EXPECT_EQ(ph.q(), kI);
  EXPECT_EQ(ph.alpha(), kI);
  EXPECT_EQ(complexify(base, Variant::RealWS).variant(), Variant::RealWS);
  EXPECT_THROW(complexify(base, Variant::Exponential), MisuseError);
  EXPECT_THROW(complexify(pt, Variant::PTTrig), MisuseError);
  // base unchanged, inverse recovers it
  EXPECT_EQ(base.alpha(), cplx(1.0));
  for (const auto& s : {pt, np, ph}) {
    const auto r = underlying_real(s);
    EXPECT_EQ(r.V0(), cplx(2.0));
    EXPECT_EQ(r.q(), cplx(1.0));
    EXPECT_EQ(r.alpha(), cplx(1.0));
  }
}

TEST(Evaluate, PointValues) {
  EXPECT_LT(std::abs(evaluate(PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0), 0.0) - cplx(-1.0)), 1e-15);
  const auto base2 = PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0);
  EXPECT_LT(std::abs(evaluate(complexify(base2, Variant::PTTrig), 0.0) - cplx(-1.0)), 1e-15);
  // Direct substitution: -i/(1 + i) = (-1 - i)/2.
  const auto base1 = PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0);
  EXPECT_LT(std::abs(evaluate(complexify(base1, Variant::NonPTComplex), 0.0) - cplx(-0.5, -0.5)), 1e-15);
}

TEST(Evaluate, MappedFormsMatchClosedForms) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> V(-4.0, 4.0), Q(0.2, 3.0), A(0.2, 2.0), X(-5.0, 5.0);
  int checked = 0;
  while (checked < 200) {
    const double V0 = V(rng), q = Q(rng) * (checked % 2 ? 1.0 : -1.0), al = A(rng), x = X(rng);
    const auto base = PotentialSpec::real_ws(V0, q, al, 1.0);
    try {
      const cplx pt = evaluate(complexify(base, Variant::PTTrig), x);
      // The hyperbolic oracle cancels like e^{2 alpha x}, so it is compared only for alpha x <= 2.
      const double xn = std::min(x, 2.0 / al);
      const cplx np = evaluate(complexify(base, Variant::NonPTComplex), xn);
      const cplx ph = evaluate(complexify(base, Variant::PseudoHermitian), x);
      EXPECT_LT(rel(pt, pt_closed(V0, q, al, x)), 1e-12);
      EXPECT_LT(rel(np, non_pt_closed(V0, q, al, xn)), 1e-12);
      EXPECT_LT(rel(ph, pseudo_closed(V0, q, al, x)), 1e-12);
      ++checked;
    } catch (const SingularPointError&) {
    }
  }
}

TEST(Evaluate, PoleIsAnErrorWithLocation) {
  // q = -1, alpha = 1: pole at x = 0.
  const auto hu = PotentialSpec::real_ws(1.0, -1.0, 1.0, 1.0);
  try {
    evaluate(hu, 0.0);
    FAIL() << "no throw at the pole";
  } catch (const SingularPointError& e) {
    EXPECT_LT(std::abs(e.pole()), 1e-12);
  }
  EXPECT_NO_THROW(evaluate(hu, 1e-6));
  EXPECT_THROW(evaluate(hu, std::nan("")), DomainError);
  // PT with q = 1: poles at alpha x = pi (mod 2 pi).
  const auto pt = complexify(PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0), Variant::PTTrig);
  EXPECT_THROW(evaluate(pt, kPi), SingularPointError);
}

TEST(Evaluate, RealWoodsSaxonIsNegativeAndDecays) {
  const auto ws = PotentialSpec::real_ws(1.5, 0.7, 1.3, 1.0);
  for (double x : grid(101, -20.0, 20.0)) EXPECT_LT(evaluate(ws, x).real(), 0.0) << x;
  EXPECT_LT(std::abs(evaluate(ws, 40.0)), 1e-15);
}

TEST(Symmetry, PTAndPseudoHermitianDefects) {
  const auto base = PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0);
  const auto xs = grid(64, -3.0, 3.0);
  const auto pt = symmetry_check(complexify(base, Variant::PTTrig), xs);
  EXPECT_EQ(pt.kind, SymmetryKind::PT);
  EXPECT_LE(pt.max_scaled_defect, 1e-12);
  const auto ph = symmetry_check(complexify(base, Variant::PseudoHermitian), xs);
  EXPECT_EQ(ph.kind, SymmetryKind::PseudoHermitian);
  EXPECT_LE(ph.max_scaled_defect, 1e-12);
  const auto he = symmetry_check(base, xs);
  EXPECT_EQ(he.kind, SymmetryKind::Hermiticity);
  EXPECT_EQ(he.max_defect, 0.0);
  // The non-PT map breaks the PT relation, seen as a nonzero Hermiticity defect.
  EXPECT_GT(symmetry_check(complexify(base, Variant::NonPTComplex), xs).max_defect, 0.1);
  EXPECT_THROW(symmetry_check(base, {}), MisuseError);
}

TEST(Symmetry, PTDefectOnRandomGrids) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> V(-4.0, 4.0), Q(0.2, 0.9), A(0.3, 2.0), X(-6.0, 6.0);
  for (int draw = 0; draw < 20; ++draw) {
    // |q| < 1 keeps the trigonometric denominators away from zero.
    const auto base = PotentialSpec::real_ws(V(rng), Q(rng), A(rng), 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 32; ++i) xs.push_back(X(rng));
    EXPECT_LE(symmetry_check(complexify(base, Variant::PTTrig), xs).max_scaled_defect, 1e-12);
    EXPECT_LE(symmetry_check(complexify(base, Variant::PseudoHermitian), xs).max_scaled_defect, 1e-12);
  }
}

TEST(Maps, PointValuesAndLimits) {
  const auto ws = PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0);
  EXPECT_EQ(s_of_x(ws, 0.0), cplx(0.5));
  EXPECT_NEAR(s_of_x(ws, 50.0).real(), 1.0, 1e-15);
  EXPECT_NEAR(s_of_x(ws, -50.0).real(), 0.0, 1e-15);
  EXPECT_EQ(s_of_x(PotentialSpec::exponential(1.0, 1.0, 1.0), 0.0), cplx(1.0));
  EXPECT_THROW(x_of_s(ws, 0.0), DomainError);
  EXPECT_THROW(x_of_s(ws, 1.0), DomainError);
  EXPECT_THROW(s_of_x(PotentialSpec::real_ws(1.0, -1.0, 1.0, 1.0), 0.0), SingularPointError);
}

TEST(Maps, RoundTrip) {
  const auto ws = PotentialSpec::real_ws(1.0, 2.5, 0.8, 1.0);
  for (double s : grid(99, 0.01, 0.99)) EXPECT_LT(std::abs(s_of_x(ws, x_of_s(ws, s).real()) - s), 1e-12);
  for (double x : grid(41, -10.0, 10.0)) EXPECT_LT(std::abs(x_of_s(ws, s_of_x(ws, x)) - x), 1e-12 * std::max(1.0, std::abs(x)));
  const auto ex = PotentialSpec::exponential(1.0, 0.7, 1.0);
  for (double x : grid(21, -3.0, 3.0)) EXPECT_LT(std::abs(x_of_s(ex, s_of_x(ex, x)) - x), 1e-12);
}
