// Shuffle-algebra products: kernel factors, the four products with frozen
// golden values, a definitional in-test oracle, the two summation engines,
// comparison maps, and pushforwards.

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <coha/coha.hpp>

namespace {

using namespace coha;

const FormalGroupLaw F = FormalGroupLaw::additive();

Poly pl(const std::string& vertex, int slot) {
  return Poly::var(VariableId::lam(vertex, slot));
}

DimVector dims(std::map<std::string, int> counts) { return DimVector(std::move(counts)); }

ShuffleElement unit_at(const DimVector& v, Flavor flavor = Flavor::symmetric) {
  return {v, RationalFn::one(), flavor};
}

// The product straight from its definition: permute the full kernel by every
// block shuffle with rational-function arithmetic throughout, and add up.
// Written here independently of the library's summation engines.
ShuffleElement definitional_product(const ShuffleElement& x, const ShuffleElement& y,
                                    const Quiver& dbl, const std::string& kind,
                                    LoopWeight w = {}) {
  const DimVector &v1 = x.v, &v2 = y.v;
  RationalFn K = x.f * embed_second(y.f, v1) * fac1(v1, v2, F) *
                 RationalFn(fac2(dbl, v1, v2, F));
  if (kind == "aux") K *= RationalFn(euler_gamma(v1, v2, w));
  if (kind == "sign") {
    Poly cross = Poly::one();
    for (const auto& p : detail::cross_pairs(v1, v2))
      cross *= detail::lambda_diff(p.vertex, p.hi, p.lo);
    K *= RationalFn(cross);
  }
  RationalFn sum;
  for (const auto& sigma : enumerate_shuffles(v1, v2)) {
    RationalFn term = apply_permutation(K, sigma);
    sum += (kind == "sign" && sigma.sign < 0) ? -term : term;
  }
  if (kind == "crit" && dot(v1, v2) % 2 != 0) sum = -sum;
  return {v1 + v2, sum, kind == "sign" ? Flavor::skew : Flavor::symmetric};
}

ShuffleElement library_product(const ShuffleElement& x, const ShuffleElement& y,
                               const Quiver& dbl, const std::string& kind,
                               LoopWeight w = {}) {
  if (kind == "prepr") return mul_preprojective(x, y, dbl, F);
  if (kind == "aux") return mul_aux(x, y, dbl, F, w);
  if (kind == "crit") return mul_critical(x, y, dbl, F);
  return mul_sign_twisted(x, y, dbl, F);
}

// --- kernel factors, frozen --------------------------------------------------

TEST(Kernel, Fac1OnePlusOne) {
  DimVector e = dims({{"1", 1}});
  EXPECT_EQ(fac1(e, e, F).str(), "(-l[1,1] + l[1,2] - t1 - t2)/(l[1,1] - l[1,2])");
  EXPECT_EQ(fac1_numerator(e, e, F).str(), "l[1,1] - l[1,2] + t1 + t2");
  // Different vertices never cross.
  EXPECT_EQ(fac1(dims({{"1", 1}}), dims({{"2", 1}}), F), RationalFn::one());
}

TEST(Kernel, Fac2JordanAndA2) {
  BuiltinQuivers B;
  DimVector e = dims({{"1", 1}});
  EXPECT_EQ(fac2(double_quiver(B.jordan), e, e, F).str(),
            "l[1,1]^2 - 2*l[1,1]*l[1,2] - l[1,1]*t1 - l[1,1]*t2 + l[1,2]^2 + "
            "l[1,2]*t1 + l[1,2]*t2 + t1*t2");
  EXPECT_EQ(fac2(double_quiver(B.a2), dims({{"1", 1}}), dims({{"2", 1}}), F).str(),
            "-l[1,1] + l[2,1] + t1");
  EXPECT_EQ(fac2(double_quiver(B.a2), dims({{"2", 1}}), dims({{"1", 1}}), F).str(),
            "l[1,1] - l[2,1] + t2");
  // fac2 refuses quivers that are not doubles.
  EXPECT_THROW(fac2(B.jordan, e, e, F), std::domain_error);
}

TEST(Kernel, EulerFactors) {
  DimVector e = dims({{"1", 1}});
  EXPECT_EQ(euler_iota(e, e).str(), "l[1,1] - l[1,2] + t1 + t2");
  EXPECT_EQ(euler_gamma(e, e, LoopWeight{-1, -1}).str(), "-l[1,1] + l[1,2] - t1 - t2");
  EXPECT_EQ(euler_gamma(e, e, LoopWeight{0, 0}).str(), "-l[1,1] + l[1,2]");
  // Defaulted loop weight is (-1,-1).
  EXPECT_EQ(euler_gamma(e, e), euler_gamma(e, e, LoopWeight{-1, -1}));
}

TEST(Kernel, VandermondeOrientation) {
  EXPECT_EQ(vandermonde(dims({{"1", 1}}), F), Poly::one());
  EXPECT_EQ(vandermonde(dims({{"1", 2}}), F), pl("1", 2) - pl("1", 1));
  EXPECT_EQ(vandermonde(dims({{"1", 3}}), F).str(),
            "-l[1,1]^2*l[1,2] + l[1,1]^2*l[1,3] + l[1,1]*l[1,2]^2 - l[1,1]*l[1,3]^2 - "
            "l[1,2]^2*l[1,3] + l[1,2]*l[1,3]^2");
  // Multiplicative across vertices.
  EXPECT_EQ(vandermonde(dims({{"1", 2}, {"2", 2}}), F),
            (pl("1", 2) - pl("1", 1)) * (pl("2", 2) - pl("2", 1)));
}

TEST(Kernel, EmbedSecondShiftsSlotsPastTheFirstBlock) {
  DimVector v1 = dims({{"1", 2}, {"2", 1}});
  Poly f = pl("1", 1) * pl("2", 1) + Poly::var(VariableId::t1());
  Poly shifted = embed_second(f, v1);
  EXPECT_EQ(shifted, pl("1", 3) * pl("2", 2) + Poly::var(VariableId::t1()));
}

// --- golden products -----------------------------------------------------------

TEST(Product, PointGoldenValues) {
  BuiltinQuivers B;
  const Quiver dbl = as_double(B.point);
  DimVector e = dims({{"1", 1}});
  ShuffleElement u = unit_at(e);

  EXPECT_EQ(mul_preprojective(u, u, dbl, F).f.str(), "-2");
  EXPECT_EQ(mul_critical(u, u, dbl, F).f.str(), "2");
  EXPECT_EQ(mul_aux(u, u, dbl, F, LoopWeight{-1, -1}).f.str(), "4*t1 + 4*t2");
  EXPECT_EQ(mul_aux(u, u, dbl, F, LoopWeight{0, 0}).f.str(), "2*t1 + 2*t2");

  ShuffleElement s = unit_at(e, Flavor::skew);
  EXPECT_EQ(mul_sign_twisted(s, s, dbl, F).f.str(), "2*l[1,1] - 2*l[1,2]");

  // Grading: degrees add.
  EXPECT_EQ(mul_preprojective(u, u, dbl, F).v, dims({{"1", 2}}));
}

TEST(Product, JordanGoldenValue) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  ShuffleElement u = unit_at(dims({{"1", 1}}));
  EXPECT_EQ(mul_preprojective(u, u, dbl, F).f.str(),
            "-2*l[1,1]^2 + 4*l[1,1]*l[1,2] - 2*l[1,2]^2 + 2*t1^2 + 2*t1*t2 + 2*t2^2");
}

TEST(Product, A2GoldenValuesAreOrderSensitive) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.a2);
  ShuffleElement e1 = unit_at(dims({{"1", 1}}));
  ShuffleElement e2 = unit_at(dims({{"2", 1}}));
  ShuffleElement xy = mul_preprojective(e1, e2, dbl, F);
  ShuffleElement yx = mul_preprojective(e2, e1, dbl, F);
  EXPECT_EQ(xy.f.str(), "-l[1,1] + l[2,1] + t1");
  EXPECT_EQ(yx.f.str(), "l[1,1] - l[2,1] + t2");
  EXPECT_EQ(xy.v, dims({{"1", 1}, {"2", 1}}));
  EXPECT_EQ(yx.v, xy.v);
}

// --- definitional oracle sweep ----------------------------------------------------

TEST(Product, MatchesTheDefinitionalSumOnRandomElements) {
  BuiltinQuivers B;
  const std::vector<std::pair<std::string, Quiver>> quivers = {
      {"point", as_double(B.point)},
      {"jordan", double_quiver(B.jordan)},
      {"a2", double_quiver(B.a2)}};
  std::mt19937_64 rng(101);
  for (const auto& [id, dbl] : quivers) {
    std::vector<std::string> verts;
    for (const auto& v : dbl.vertices()) verts.push_back(v);
    const auto all_dims = detail::dim_vectors_up_to(verts, 2);
    for (const auto& v1 : all_dims)
      for (const auto& v2 : all_dims) {
        if (v1.total() + v2.total() > 3) continue;
        for (const std::string kind : {"prepr", "aux", "crit", "sign"}) {
          ShuffleElement x = kind == "sign" ? random_skew_element(v1, 2, rng)
                                            : random_element(v1, 2, rng);
          ShuffleElement y = kind == "sign" ? random_skew_element(v2, 2, rng)
                                            : random_element(v2, 2, rng);
          ShuffleElement got = library_product(x, y, dbl, kind);
          ShuffleElement want = definitional_product(x, y, dbl, kind);
          EXPECT_EQ(got.f, want.f) << id << " " << kind << " " << v1.str() << " x "
                                   << v2.str();
          EXPECT_EQ(got.v, want.v);
          EXPECT_TRUE(got.f.is_polynomial())
              << id << " " << kind << ": denominators must clear";
        }
      }
  }
}

TEST(Product, RationalFunctionInputsUseTheSameDefinition) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  // A symmetric but non-polynomial coefficient forces the rational path.
  DimVector v1 = dims({{"1", 2}}), v2 = dims({{"1", 1}});
  RationalFn f1(Poly::one(),
                pl("1", 1) + pl("1", 2) + Poly::var(VariableId::t1()));
  ShuffleElement x{v1, f1, Flavor::symmetric};
  ShuffleElement y = unit_at(v2);
  for (const std::string kind : {"prepr", "aux", "crit"}) {
    ShuffleElement got = library_product(x, y, dbl, kind);
    ShuffleElement want = definitional_product(x, y, dbl, kind);
    EXPECT_EQ(got.f, want.f) << kind;
    EXPECT_FALSE(got.f.is_polynomial());
  }
}

// Scalar multiples route the same product through different internal
// evaluation strategies (packed lanes vs generic polynomials); bilinearity
// ties them together.
TEST(Product, BilinearityAcrossEvaluationStrategies) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  const RationalFn half{Rational(ratio(1, 2))};
  std::mt19937_64 rng(55);
  for (const std::string kind : {"prepr", "aux", "crit", "sign"}) {
    DimVector v1 = dims({{"1", 2}}), v2 = dims({{"1", 1}});
    ShuffleElement x = kind == "sign" ? random_skew_element(v1, 2, rng)
                                      : random_element(v1, 2, rng);
    ShuffleElement y = kind == "sign" ? random_skew_element(v2, 2, rng)
                                      : random_element(v2, 2, rng);
    ShuffleElement xh{x.v, x.f * half, x.flavor};
    ShuffleElement whole = library_product(x, y, dbl, kind);
    ShuffleElement halved = library_product(xh, y, dbl, kind);
    EXPECT_EQ(halved.f * RationalFn(Rational(2)), whole.f) << kind;
  }
}

// --- algebra structure ----------------------------------------------------------

TEST(Product, UnitElementIsTwoSidedIdentity) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  std::mt19937_64 rng(77);
  ShuffleElement x = random_element(dims({{"1", 2}}), 2, rng);
  for (const std::string kind : {"prepr", "aux", "crit"}) {
    ShuffleElement u = unit_element();
    EXPECT_EQ(library_product(u, x, dbl, kind).f, x.f) << kind;
    EXPECT_EQ(library_product(x, u, dbl, kind).f, x.f) << kind;
  }
  ShuffleElement s = random_skew_element(dims({{"1", 2}}), 2, rng);
  ShuffleElement su = unit_element(Flavor::skew);
  EXPECT_EQ(mul_sign_twisted(su, s, dbl, F).f, s.f);
  EXPECT_EQ(mul_sign_twisted(s, su, dbl, F).f, s.f);
}

TEST(Product, OutputsKeepTheirSymmetryFlavor) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.a2);
  std::mt19937_64 rng(88);
  DimVector v1 = dims({{"1", 1}, {"2", 1}}), v2 = dims({{"1", 1}});
  for (const std::string kind : {"prepr", "aux", "crit"}) {
    ShuffleElement r = library_product(random_element(v1, 2, rng),
                                       random_element(v2, 2, rng), dbl, kind);
    EXPECT_NO_THROW(validate_element(r)) << kind;
    EXPECT_EQ(r.flavor, Flavor::symmetric);
  }
  ShuffleElement r = mul_sign_twisted(random_skew_element(v1, 2, rng),
                                      random_skew_element(v2, 2, rng), dbl, F);
  EXPECT_NO_THROW(validate_element(r));
  EXPECT_EQ(r.flavor, Flavor::skew);
}

TEST(Product, CriticalIsASignTwistOfPreprojective) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  std::mt19937_64 rng(99);
  // Odd pairing: dot = 1.
  ShuffleElement x = random_element(dims({{"1", 1}}), 2, rng);
  ShuffleElement y = random_element(dims({{"1", 1}}), 2, rng);
  EXPECT_EQ(mul_critical(x, y, dbl, F).f, -mul_preprojective(x, y, dbl, F).f);
  // Even pairing: dot = 2.
  ShuffleElement z = random_element(dims({{"1", 2}}), 2, rng);
  EXPECT_EQ(mul_critical(z, y, dbl, F).f, mul_preprojective(z, y, dbl, F).f);
}

TEST(Product, FlavorMismatchIsRejected) {
  BuiltinQuivers B;
  const Quiver dbl = as_double(B.point);
  ShuffleElement sym = unit_at(dims({{"1", 1}}));
  ShuffleElement skew = unit_at(dims({{"1", 1}}), Flavor::skew);
  EXPECT_THROW(mul_sign_twisted(sym, sym, dbl, F), std::invalid_argument);
  EXPECT_THROW(mul_preprojective(skew, skew, dbl, F), std::invalid_argument);
  EXPECT_THROW(mul_aux(sym, skew, dbl, F), std::invalid_argument);
}

TEST(Element, ValidateRejectsWrongSymmetry) {
  ShuffleElement bad{dims({{"1", 2}}), RationalFn(pl("1", 1)), Flavor::symmetric};
  EXPECT_THROW(validate_element(bad), SymmetryError);
  ShuffleElement slot_out{dims({{"1", 1}}), RationalFn(pl("1", 2)), Flavor::symmetric};
  EXPECT_THROW(validate_element(slot_out), std::domain_error);
  ShuffleElement good{dims({{"1", 2}}), RationalFn(pl("1", 1) * pl("1", 2)),
                      Flavor::symmetric};
  EXPECT_NO_THROW(validate_element(good));
}

// --- comparison maps ---------------------------------------------------------------

TEST(Xi, CriticalTwistSignsByBinomialParity) {
  ShuffleElement one_slot = unit_at(dims({{"1", 1}}));
  EXPECT_EQ(xi_critical(one_slot).f, RationalFn::one());  // C(1,2) = 0

  ShuffleElement two_slots = unit_at(dims({{"1", 2}}));
  EXPECT_EQ(xi_critical(two_slots).f, -RationalFn::one());  // C(2,2) = 1

  ShuffleElement mixed = unit_at(dims({{"1", 2}, {"2", 3}}));
  // C(2,2) + C(3,2) = 1 + 3 = 4, even.
  EXPECT_EQ(xi_critical(mixed).f, RationalFn::one());

  EXPECT_THROW(xi_critical(unit_at(dims({{"1", 1}}), Flavor::skew)),
               std::invalid_argument);
}

TEST(Xi, CriticalIntertwinesTheTwoProducts) {
  BuiltinQuivers B;
  const Quiver dbl = double_quiver(B.jordan);
  ShuffleElement x = unit_at(dims({{"1", 1}}));
  ShuffleElement y = unit_at(dims({{"1", 2}}));
  ShuffleElement lhs = mul_critical(xi_critical(x), xi_critical(y), dbl, F);
  ShuffleElement rhs = xi_critical(mul_preprojective(x, y, dbl, F));
  EXPECT_EQ(lhs.f, rhs.f);
}

TEST(Xi, SignTwistMultipliesByTheVandermonde) {
  ShuffleElement x = unit_at(dims({{"1", 2}}));
  ShuffleElement out = xi_sign(x, F);
  EXPECT_EQ(out.flavor, Flavor::skew);
  EXPECT_EQ(out.f, RationalFn(pl("1", 2) - pl("1", 1)));
  EXPECT_THROW(xi_sign(unit_at(dims({{"1", 1}}), Flavor::skew), F),
               std::invalid_argument);
}

TEST(Xi, SignTwistIntertwinesTheTwoProducts) {
  BuiltinQuivers B;
  const Quiver dbl = as_double(B.point);
  ShuffleElement x = unit_at(dims({{"1", 1}}));
  ShuffleElement lhs = mul_sign_twisted(xi_sign(x, F), xi_sign(x, F), dbl, F);
  ShuffleElement rhs = xi_sign(mul_preprojective(x, x, dbl, F), F);
  EXPECT_EQ(lhs.f, rhs.f);
  EXPECT_EQ(lhs.f.str(), "2*l[1,1] - 2*l[1,2]");
}

// --- summation engines ----------------------------------------------------------------

// The divided-difference chain and the common-denominator reference engine
// compute the same symmetrized sum on block-symmetric inputs.
TEST(Engine, DividedDifferenceChainMatchesReferenceSummation) {
  std::mt19937_64 rng(23);
  std::vector<std::pair<DimVector, DimVector>> cases;
  for (int r = 0; r <= 3; ++r)
    for (int s = 0; s <= 3; ++s)
      cases.emplace_back(dims({{"1", r}}), dims({{"1", s}}));
  cases.emplace_back(dims({{"1", 2}, {"2", 1}}), dims({{"1", 1}, {"2", 2}}));
  cases.emplace_back(dims({{"1", 1}}), dims({{"1", 2}, {"2", 1}}));

  for (const auto& [v1, v2] : cases) {
    for (int k = 0; k < 3; ++k) {
      // A product of block-symmetric factors is block-symmetric.
      Poly P = random_element(v1, 2, rng).f.num() *
               embed_second(random_element(v2, 2, rng).f.num(), v1);
      EXPECT_EQ(detail::demazure_shuffle_sum(P, v1, v2),
                detail::shuffle_sum_over_cross(P, v1, v2))
          << v1.str() << " x " << v2.str();
    }
  }
}

TEST(Engine, SingleDividedDifferenceStepIsExact) {
  std::mt19937_64 rng(29);
  const VariableId lo = VariableId::lam("1", 1), hi = VariableId::lam("1", 2);
  std::map<VariableId, VariableId> swap{{lo, hi}, {hi, lo}};
  for (int k = 0; k < 20; ++k) {
    Poly f = random_element(dims({{"1", 2}}), 3, rng).f.num() * pl("1", 1) +
             Poly(Rational(static_cast<long>(rng() % 5)));
    Poly numer = f - f.relabeled(swap);
    auto expect = numer.divided_exactly_by(Poly::var(hi) - Poly::var(lo));
    ASSERT_TRUE(expect.has_value());
    EXPECT_EQ(detail::demazure_step(f, lo, hi), *expect);
  }
}

TEST(Engine, ReferenceSummationDetectsResidualDenominators) {
  // A block-asymmetric input leaves an uncleared Vandermonde factor behind;
  // the reference engine must fail loudly, never return a wrong polynomial.
  DimVector v1 = dims({{"1", 2}}), v2 = dims({{"1", 1}});
  Poly P = pl("1", 1);
  try {
    detail::shuffle_sum_over_cross(P, v1, v2);
    FAIL() << "expected ResidualDenominatorError";
  } catch (const ResidualDenominatorError& e) {
    EXPECT_NE(std::string(e.what()).find("l[1,3]"), std::string::npos) << e.what();
  }
}

TEST(Engine, SignedSumIsDenominatorFreeAndAlternating) {
  DimVector v1 = dims({{"1", 1}}), v2 = dims({{"1", 1}});
  // P = l[1,1]: sum over the two shuffles with signs = l[1,1] - l[1,2].
  EXPECT_EQ(detail::signed_shuffle_sum(pl("1", 1), v1, v2),
            pl("1", 1) - pl("1", 2));
  // A symmetric P cancels.
  EXPECT_EQ(detail::signed_shuffle_sum(Poly::one(), v1, v2), Poly::zero());
}

// --- pushforwards ----------------------------------------------------------------------

TEST(Pushforward, PlainFrozenValues) {
  EXPECT_EQ(pushforward_plain(RationalFn::one(), 1, 2).str(), "0");
  EXPECT_EQ(pushforward_plain(RationalFn(pl("1", 1)), 1, 2).str(), "-1");
  EXPECT_EQ(pushforward_plain(RationalFn(pl("1", 1).pow(2)), 1, 2).str(),
            "-l[1,1] - l[1,2]");
  EXPECT_EQ(pushforward_plain(RationalFn(pl("1", 1).pow(3)), 1, 3).str(),
            "l[1,1] + l[1,2] + l[1,3]");
  // Trivial block splits are the identity.
  RationalFn f(pl("1", 1) + pl("1", 2));
  EXPECT_EQ(pushforward_plain(f, 2, 2), f);
  EXPECT_EQ(pushforward_plain(f, 0, 2), f);
}

TEST(Pushforward, SignFrozenValues) {
  EXPECT_EQ(pushforward_sign(RationalFn(pl("1", 1) - pl("1", 2)), 1, 2).str(), "0");
  EXPECT_EQ(pushforward_sign(RationalFn(pl("1", 2) - pl("1", 3)), 1, 3).str(),
            "(2*l[1,1]^2 - 2*l[1,1]*l[1,2] - 2*l[1,1]*l[1,3] + 2*l[1,2]^2 - "
            "2*l[1,2]*l[1,3] + 2*l[1,3]^2)/"
            "(l[1,1]^2*l[1,2] - l[1,1]^2*l[1,3] - l[1,1]*l[1,2]^2 + l[1,1]*l[1,3]^2 + "
            "l[1,2]^2*l[1,3] - l[1,2]*l[1,3]^2)");
}

TEST(Pushforward, PolynomialInputsContractToPolynomials) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n; ++r)
      for (int k = 0; k < 3; ++k) {
        // Fully symmetric inputs are in particular block-symmetric.
        DimVector v = dims({{"1", n}});
        RationalFn f = random_element(v, 2, rng).f;
        RationalFn out = pushforward_plain(f, r, n);
        EXPECT_TRUE(out.is_polynomial()) << "n=" << n << " r=" << r;
      }
}

TEST(Pushforward, ValidatesItsInput) {
  // Not symmetric under the S_1 x S_2 block action.
  EXPECT_THROW(pushforward_plain(RationalFn(pl("1", 2)), 1, 3), SymmetryError);
  // Skew check for the signed variant.
  EXPECT_THROW(pushforward_sign(RationalFn(pl("1", 2) + pl("1", 3)), 1, 3),
               SymmetryError);
  // Block bounds.
  EXPECT_THROW(pushforward_plain(RationalFn::one(), 3, 2), std::invalid_argument);
  EXPECT_THROW(pushforward_plain(RationalFn::one(), -1, 2), std::invalid_argument);
  // Slots beyond n.
  EXPECT_THROW(pushforward_plain(RationalFn(pl("1", 4)), 1, 3), std::domain_error);
}

}  // namespace
