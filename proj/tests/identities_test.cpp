#include "kloost/identities.hpp"

#include <gtest/gtest.h>

#include "kloost/goethals.hpp"
#include "kloost/parallel.hpp"

namespace kloost {
namespace {

Poly alternative_poly(int m) {
  for (Poly p = default_poly(m) + 1; p < (Poly{2} << m); ++p)
    if (is_irreducible(p)) return p;
  return default_poly(m);
}

void expect_accounting(const VerificationReport& r) {
  EXPECT_EQ(r.checked + r.skipped_total() + r.excluded, r.domain_size) << r.name << " m=" << r.m;
}

TEST(Identities, CatalogContents) {
  const auto catalog = builtin_catalog();
  EXPECT_GE(catalog.size(), 12u);
  const auto hz1 = find_builtin("HZ-I");
  ASSERT_TRUE(hz1);
  EXPECT_TRUE(hz1->exclude_zero);
  EXPECT_TRUE(hz1->exclude_one);
  EXPECT_EQ(hz1->excluded_value_count(), 2u);

  const auto cor13 = find_builtin("Cor1-3");
  ASSERT_TRUE(cor13);
  EXPECT_EQ(cor13->lhs, parse("(c+1)^8*(c^4+c)"));
  EXPECT_EQ(cor13->rhs, parse("c^3*(c^3+1)^3"));
  EXPECT_TRUE(cor13->exclusions.empty());
  EXPECT_EQ(guard_subexpressions(cor13->lhs).size(), 0u);

  EXPECT_EQ(find_builtin("Cor5")->exclusions.at(0), parse("b^8+b^4+1"));
  EXPECT_FALSE(find_builtin("nope"));
}

TEST(Identities, TextFormatRoundTrip) {
  for (const auto& id : builtin_catalog()) {
    const Identity again = parse_identity(format_identity(id));
    EXPECT_EQ(again.name, id.name);
    EXPECT_EQ(again.var, id.var);
    EXPECT_EQ(again.lhs, id.lhs);
    EXPECT_EQ(again.rhs, id.rhs);
    EXPECT_EQ(again.exclusions.size(), id.exclusions.size());
    EXPECT_EQ(again.exclude_zero, id.exclude_zero);
    EXPECT_EQ(again.exclude_one, id.exclude_one);
  }
  const Identity id = parse_identity("x : t : t^2 == t ; NOTVALUES 1 ; EXCLUDE t+1, t");
  EXPECT_TRUE(id.exclude_one);
  EXPECT_FALSE(id.exclude_zero);
  EXPECT_EQ(id.exclusions.size(), 2u);
}

TEST(Identities, TextFormatErrors) {
  EXPECT_THROW(parse_identity("name : a : a + 1"), ParseError);
  EXPECT_THROW(parse_identity("name : a : a == a == a"), ParseError);
  EXPECT_THROW(parse_identity("name : ab : a == a"), ParseError);
  EXPECT_THROW(parse_identity("name : a : a == a ; FOO a"), ParseError);
  EXPECT_THROW(parse_identity("name : a : a == a ; NOTVALUES 2"), ParseError);
  EXPECT_THROW(parse_identity("name : a : b == b"), InvalidArgument);
  EXPECT_THROW(parse_identity("name : a : a == a ; EXCLUDE c"), InvalidArgument);
}

TEST(Identities, HzFormulaOneSmallFields) {
  const auto hz1 = *find_builtin("HZ-I");
  const auto r8 = verify(Field(8), hz1);
  EXPECT_EQ(r8.checked, 254u);
  EXPECT_EQ(r8.counterexample_count, 0u);
  EXPECT_EQ(r8.skipped_total(), 0u);

  const auto r2 = verify(Field(2), hz1);
  EXPECT_EQ(r2.checked, 2u);
  EXPECT_EQ(r2.counterexample_count, 0u);
}

TEST(Identities, FalseIdentityIsCaught) {
  const auto r = verify(Field(3), parse_identity("shift : a : a == a+1"));
  EXPECT_GE(r.counterexample_count, 1u);
  ASSERT_FALSE(r.counterexamples.empty());
  const auto& cex = r.counterexamples.front();
  EXPECT_NE(cex.lhs, cex.rhs);
  EXPECT_EQ(cex.rhs_arg, cex.lhs_arg ^ 1);
  expect_accounting(r);
}

TEST(Identities, CatalogHoldsUnderTwoPolynomials) {
  const auto catalog = builtin_catalog();
  for (int m = 3; m <= 12; ++m) {
    for (Poly poly : {default_poly(m), alternative_poly(m)}) {
      const Field f(m, poly);
      const Spectrum s = spectrum(f);
      for (const auto& id : catalog) {
        const auto r = verify(f, s, id);
        EXPECT_EQ(r.counterexample_count, 0u) << id.name << " m=" << m << " poly=" << poly_hex(poly);
        expect_accounting(r);
        if (id.name == "HZ-I") EXPECT_EQ(r.skipped_total(), 0u);
      }
    }
  }
}

TEST(Identities, NoteThm4ReducesToKnownFormulas) {
  const auto thm4_1 = family_note_thm4(1);
  const auto hz1 = *find_builtin("HZ-I");
  const auto cor15 = *find_builtin("Cor1-5");
  const auto thm4_m18 = family_note_thm4(DyadicRational(-1, 3));
  for (int m = 3; m <= 8; ++m) {
    const Field f(m);
    for (Elem c = 2; c < f.order(); ++c) {
      ASSERT_EQ(eval(f, thm4_1.lhs, c), eval(f, hz1.lhs, c));
      ASSERT_EQ(eval(f, thm4_1.rhs, c), eval(f, hz1.rhs, c));
    }
    for (Elem c = 0; c < f.order(); ++c) {
      const Evaluated l = try_eval(f, thm4_m18.lhs, c);
      if (!l.ok()) continue;
      // L(-1/8)^8 is the Cor1-5 left side.
      ASSERT_EQ(f.pow(l.value, std::uint64_t{8}), eval(f, cor15.lhs, c)) << "m=" << m << " c=" << c;
    }
  }
}

// Where both are defined, the family instance and the named corollary agree
// pointwise on both sides.
void expect_same_where_defined(const Identity& a, const Identity& b, int max_m) {
  for (int m = 3; m <= max_m; ++m) {
    const Field f(m);
    std::uint64_t compared = 0;
    for (Elem v = 0; v < f.order(); ++v) {
      const Evaluated al = try_eval(f, a.lhs, v), bl = try_eval(f, b.lhs, v);
      const Evaluated ar = try_eval(f, a.rhs, v), br = try_eval(f, b.rhs, v);
      if (!al.ok() || !bl.ok() || !ar.ok() || !br.ok()) continue;
      ++compared;
      ASSERT_EQ(al.value, bl.value) << a.name << " vs " << b.name << " m=" << m << " v=" << v;
      ASSERT_EQ(ar.value, br.value) << a.name << " vs " << b.name << " m=" << m << " v=" << v;
    }
    EXPECT_GT(compared, 0u);
  }
}

TEST(Identities, FamilyInstancesMatchCorollaries) {
  expect_same_where_defined(family_thm5(1, 0), *find_builtin("Cor2"), 9);
  expect_same_where_defined(family_thm5(1, 2), *find_builtin("Cor3"), 9);
  expect_same_where_defined(family_thm6(3), *find_builtin("Cor5"), 9);
  expect_same_where_defined(
      family_thm5(-1, 3), parse_identity("Cor4(k=3) : b : (b^4+b^2+b)*(b^4+b^2+1)^3/(1+b)^4 == "
                                         "(b^4+b^2+b)^3*(b^4+b^2+1)/(1+b)^4"),
      9);
}

TEST(Identities, FamiliesAreWellFormed) {
  const auto t6 = family_thm6(DyadicRational(-1, 1));
  EXPECT_EQ(t6.var, 'b');
  EXPECT_EQ(t6.exclusions.size(), 1u);
  EXPECT_EQ(t6.exclusions[0], parse("b^(-2)+1"));
  EXPECT_EQ(family_thm6(1).exclusions[0], parse("b^4+1"));
  EXPECT_EQ(family_note_thm4(-2).name, "thm4(n=-2)");
  EXPECT_EQ(family_thm5(-1, 3).name, "thm5(n=-1,k=3)");
}

TEST(Identities, FamiliesVerify) {
  std::vector<Identity> ids;
  for (DyadicRational n : {DyadicRational(1), DyadicRational(2), DyadicRational(3), DyadicRational(1, 2),
                           DyadicRational(-1, 2), DyadicRational(-1, 3), DyadicRational(-2)})
    ids.push_back(family_note_thm4(n));
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 0}, {1, 2}, {-1, 0}, {-1, 2}, {-1, 3}, {2, 1}})
    ids.push_back(family_thm5(n, k));
  for (DyadicRational n : {DyadicRational(1), DyadicRational(2), DyadicRational(3), DyadicRational(-1, 1)})
    ids.push_back(family_thm6(n));
  for (int m = 3; m <= 9; ++m) {
    const Field f(m);
    const Spectrum s = spectrum(f);
    for (const auto& id : ids) {
      const auto r = verify(f, s, id);
      EXPECT_EQ(r.counterexample_count, 0u) << id.name << " m=" << m;
      expect_accounting(r);
    }
  }
}

TEST(Identities, NegativeExponentSkipsZeroAsDomainError) {
  const Field f(5);
  const auto r = verify(f, family_note_thm4(-2));
  EXPECT_GE(r.skipped.at(skip_reason::kDomainError), 1u);
  expect_accounting(r);
}

TEST(Identities, ReportIsIndependentOfWorkerCount) {
  const Field f(10);
  const Spectrum s = spectrum(f);
  const auto id = parse_identity("wrong : a : a^3 == a^5");
  set_workers(1);
  const auto one = to_json(verify(f, s, id, 5));
  set_workers(5);
  const auto five = to_json(verify(f, s, id, 5));
  set_workers(1);
  EXPECT_EQ(one, five);
  EXPECT_EQ(one["counterexamples"].size(), 5u);
}

TEST(Theorem2, SmallFieldWalkthrough) {
  const Field f(2);
  const Elem w = 0b10;
  const KPair k = k_pair(f, 0, w);
  EXPECT_EQ(k.k1, f.square(w));
  EXPECT_EQ(k.k2, 1u);
  const Spectrum s = spectrum(f);
  EXPECT_EQ(s.at(f.mul(k.k1, k.k2)), s.at(f.mul(k.k1, k.k2) ^ k.k2));
  const auto r = verify_theorem2(f, s);
  EXPECT_EQ(r.counterexample_count, 0u);
  expect_accounting(r);
}

TEST(Theorem2, SkipsExactlyTheZeroProducts) {
  for (int m = 2; m <= 8; ++m) {
    const Field f(m);
    const auto r = verify_theorem2(f, spectrum(f));
    std::uint64_t zero_products = 0;
    for (Elem b = 0; b < f.order(); ++b) {
      for (Elem c = 0; c < f.order(); ++c) {
        const KPair k = k_pair(f, b, c);
        if (k.k1 == 0 || k.k2 == 0) {
          ++zero_products;
        } else {
          // k2 (k1 + 1) never vanishes once k1 k2 does not.
          ASSERT_NE(f.mul(k.k2, k.k1 ^ 1), 0u);
        }
      }
    }
    EXPECT_EQ(r.skipped_total(), zero_products);
    EXPECT_EQ(r.skipped.count("rhs_arg_zero"), 0u);
    EXPECT_EQ(r.counterexample_count, 0u) << "m=" << m;
    expect_accounting(r);
  }
}

}  // namespace
}  // namespace kloost
