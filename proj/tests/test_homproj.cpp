#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stabg/errors.hpp"
#include "stabg/homproj.hpp"

using namespace stabg;
using oracle::jordan;

namespace {

bool iso(const Module& a, const Module& b) { return is_isomorphic(a, b).has_value(); }

/// Direct sums of the given indecomposables with total dimension <= bound (multisets, no zero).
std::vector<Module> sums_up_to(const AlgebraPtr& alg, const std::vector<Module>& indec, std::size_t bound) {
  std::vector<Module> out;
  std::vector<Module> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t dim) {
    if (!cur.empty()) out.push_back(direct_sum(alg, cur).module);
    for (std::size_t i = start; i < indec.size(); ++i) {
      if (dim + indec[i].dim() > bound) continue;
      cur.push_back(indec[i]);
      rec(i, dim + indec[i].dim());
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST(TopSocle, Examples) {
  auto t4 = trunc_poly(2, 4);
  auto s = projective_data(t4).simples;
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].dim(), 1u);
  EXPECT_TRUE(iso(top(jordan(t4, 3)), jordan(t4, 1)));
  EXPECT_TRUE(iso(socle(jordan(t4, 3)), jordan(t4, 1)));
  // x^2 is the last basis vector of the shift model
  EXPECT_EQ(socle_subspace(jordan(t4, 3)).basis(), (std::vector<Vec>{{0, 0, 1}}));
}

TEST(Cover, Examples) {
  auto t4 = trunc_poly(2, 4);
  auto c = projective_cover(jordan(t4, 1));
  EXPECT_TRUE(iso(c.module, jordan(t4, 4)));
  EXPECT_TRUE(c.epi.is_surjective());
  EXPECT_TRUE(iso(syzygy(jordan(t4, 2)), jordan(t4, 2)));
  EXPECT_TRUE(is_projective(jordan(t4, 4)));
  EXPECT_FALSE(is_projective(jordan(t4, 3)));
  EXPECT_TRUE(is_projective(zero_module(t4)));
}

TEST(Envelope, Examples) {
  auto t4 = trunc_poly(2, 4);
  auto env = injective_envelope(jordan(t4, 1));
  EXPECT_TRUE(iso(env.module, jordan(t4, 4)));
  EXPECT_TRUE(env.mono.is_injective());
  EXPECT_TRUE(is_injective(regular_module(exterior(2, 2))));
  auto t2 = trunc_poly(2, 2);
  EXPECT_FALSE(is_injective(jordan(t2, 1)));
  EXPECT_TRUE(iso(injective_envelope(jordan(t2, 1)).module, jordan(t2, 2)));
  auto sq = square_zero(2, 2);
  EXPECT_FALSE(is_injective(regular_module(sq)));
  EXPECT_TRUE(is_injective(coregular(sq)));
  EXPECT_FALSE(is_projective(coregular(sq)));
}

TEST(EnvelopeProperty, NonCommutativeAlgebra) {
  // upper triangular 2x2 matrices: two simples, projectives e11 A (dim 2... ) and e22 A
  std::vector<std::vector<Vec>> mul(3, std::vector<Vec>(3, Vec{0, 0, 0}));
  mul[0][0] = {1, 0, 0};
  mul[0][1] = {0, 1, 0};
  mul[1][2] = {0, 1, 0};
  mul[2][2] = {0, 0, 1};
  auto up = FiniteAlgebra::from_structure_constants(2, mul, {1, 0, 1}, {"e11", "e12", "e22"}, "upper");
  const auto& pd = projective_data(up);
  ASSERT_EQ(pd.simples.size(), 2u);
  std::size_t total = 0;
  for (std::size_t j = 0; j < 2; ++j) {
    total += pd.projectives[j].dim();
    EXPECT_TRUE(is_projective(pd.projectives[j]));
    EXPECT_TRUE(is_injective(pd.injectives[j]));
    EXPECT_TRUE(iso(top(pd.projectives[j]), pd.simples[j]));
    EXPECT_TRUE(iso(socle(pd.injectives[j]), pd.simples[j]));
  }
  EXPECT_EQ(total, 3u);
  for (const auto& s : pd.simples) {
    auto env = injective_envelope(s);
    EXPECT_TRUE(env.mono.is_injective());
    EXPECT_TRUE(is_injective(env.module));
  }
}

TEST(Ftp, Examples) {
  auto t4 = trunc_poly(2, 4);
  auto c = projective_cover(jordan(t4, 2));
  EXPECT_TRUE(factors_through_projective(c.epi));
  EXPECT_TRUE(factors_through_projective(ModuleHom::identity(jordan(t4, 4))));
  auto t2 = trunc_poly(2, 2);
  EXPECT_FALSE(factors_through_projective(ModuleHom::identity(jordan(t2, 1))));
  auto w = factors_through_projective(c.epi);
  ASSERT_TRUE(w);
  EXPECT_EQ(c.epi.matrix() * w->matrix(), c.epi.matrix());
}

TEST(StableHom, Examples) {
  auto t2 = trunc_poly(2, 2);
  EXPECT_EQ(stable_hom(jordan(t2, 1), jordan(t2, 1)).dim, 1u);
  EXPECT_EQ(stable_hom(jordan(t2, 1), jordan(t2, 2)).dim, 0u);
  auto t4 = trunc_poly(2, 4);
  EXPECT_EQ(stable_hom(jordan(t4, 4), jordan(t4, 4)).dim, 0u);
  EXPECT_EQ(stable_hom(jordan(t4, 2), jordan(t4, 2)).dim, 2u);
}

TEST(StableEquivalence, Examples) {
  auto t4 = trunc_poly(2, 4);
  Module m2 = jordan(t4, 2);
  auto h = is_stable_equivalence(ModuleHom::identity(m2));
  ASSERT_TRUE(h);
  EXPECT_TRUE(h->matrix().is_identity());
  auto sum = direct_sum(t4, {m2, jordan(t4, 4)});
  auto inflation = sum.injections[0];
  auto q = is_stable_equivalence(inflation);
  ASSERT_TRUE(q);
  EXPECT_TRUE(factors_through_projective(q->after(inflation) - ModuleHom::identity(m2)));
  EXPECT_TRUE(is_stable_equivalence(sum.projections[0]));
  FpMatrix x = m2.action(1);
  EXPECT_FALSE(is_stable_equivalence(ModuleHom::create(m2, m2, x)));
}

TEST(StablyIsomorphic, Examples) {
  auto t4 = trunc_poly(2, 4);
  Module m3 = jordan(t4, 3);
  EXPECT_TRUE(stably_isomorphic(m3, direct_sum(t4, {m3, jordan(t4, 4)}).module));
  EXPECT_FALSE(stably_isomorphic(jordan(t4, 1), m3));
  EXPECT_TRUE(stably_isomorphic(jordan(t4, 4), zero_module(t4)));
}

TEST(Ext, Examples) {
  auto t2 = trunc_poly(2, 2);
  Module k = jordan(t2, 1);
  auto e = ext1(k, k);
  EXPECT_EQ(e.dim, 1u);
  auto split = extension_from_class(k, k, {0});
  EXPECT_TRUE(iso(split.sequence.middle(), direct_sum(t2, {k, k}).module));
  auto nonsplit = extension_from_class(k, k, {1});
  EXPECT_TRUE(iso(nonsplit.sequence.middle(), jordan(t2, 2)));
  EXPECT_THROW(extension_from_class(k, k, {1, 0}), DimensionMismatch);
  EXPECT_THROW(extension_from_class(k, k, {2}), InputError);
}

TEST(HomprojProperty, SyzygySequenceIsExact) {
  std::mt19937 rng(31);
  for (const auto& alg : {trunc_poly(2, 4), exterior(2, 2), square_zero(2, 2), trunc_poly(3, 3)}) {
    auto indec = enumerate_indecomposables(alg, 3).modules;
    for (const auto& m0 : sums_up_to(alg, indec, 4)) {
      Module m = oracle::random_conjugate(m0, rng);
      auto c = projective_cover(m);
      auto om = syzygy_inclusion(m);
      EXPECT_NO_THROW(ShortExact::create(om.inclusion, c.epi));
      EXPECT_EQ(is_projective(m), om.module.dim() == 0);
      EXPECT_TRUE(is_projective(c.module));
    }
  }
}

TEST(HomprojProperty, ProjectiveIffInjectiveOverSelfInjective) {
  for (const auto& alg : {trunc_poly(2, 1), trunc_poly(2, 2), trunc_poly(2, 3), trunc_poly(2, 4), exterior(2, 2)}) {
    auto indec = enumerate_indecomposables(alg, 5).modules;
    for (const auto& m : sums_up_to(alg, indec, 5)) EXPECT_EQ(is_projective(m), is_injective(m));
  }
}

TEST(HomprojProperty, StableHomIgnoresProjectiveSummands) {
  auto t4 = trunc_poly(2, 4);
  auto e = exterior(2, 2);
  for (const auto& alg : {t4, e}) {
    auto indec = enumerate_indecomposables(alg, 3).modules;
    Module p = regular_module(alg);
    for (const auto& m : indec)
      for (const auto& n : indec) {
        std::size_t d = stable_hom(m, n).dim;
        EXPECT_EQ(stable_hom(direct_sum(alg, {m, p}).module, n).dim, d);
        EXPECT_EQ(stable_hom(m, direct_sum(alg, {n, p}).module).dim, d);
      }
  }
}

TEST(HomprojProperty, CompositeOfStableEquivalences) {
  auto t4 = trunc_poly(2, 4);
  std::vector<Module> objs = {jordan(t4, 2), direct_sum(t4, {jordan(t4, 2), jordan(t4, 4)}).module,
                              direct_sum(t4, {jordan(t4, 4), jordan(t4, 2)}).module};
  std::size_t composites = 0;
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& c : objs) {
        auto ab = hom_space(a, b), bc = hom_space(b, c);
        if (ab.size() > 6 || bc.size() > 6) continue;
        std::vector<ModuleHom> fs, gs;
        for (const auto& v : oracle::all_vectors(2, ab.size())) {
          auto f = combine(ab, v, a, b);
          if (is_stable_equivalence(f)) fs.push_back(f);
        }
        for (const auto& v : oracle::all_vectors(2, bc.size())) {
          auto g = combine(bc, v, b, c);
          if (is_stable_equivalence(g)) gs.push_back(g);
        }
        for (std::size_t i = 0; i < fs.size() && i < 6; ++i)
          for (std::size_t j = 0; j < gs.size() && j < 6; ++j) {
            EXPECT_TRUE(is_stable_equivalence(gs[j].after(fs[i])));
            ++composites;
          }
      }
  EXPECT_GT(composites, 20u);
}

namespace {

/// |Ext¹(M, N)| over k[x]/x^n by counting nilpotent block matrices [[N_x, D], [0, M_x]] modulo coboundaries.
std::size_t brute_ext_size(const Module& m, const Module& n, std::size_t nil) {
  const Scalar p = m.p();
  FpMatrix nx = n.action(1), mx = m.action(1);
  const std::size_t a = n.dim(), b = m.dim();
  std::size_t cocycles = 0;
  for (const auto& d : oracle::all_vectors(p, a * b)) {
    FpMatrix x(p, a + b, a + b);
    x.paste(0, 0, nx);
    x.paste(a, a, mx);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < b; ++c) x.set(r, a + c, d[r * b + c]);
    FpMatrix pw = FpMatrix::identity(p, a + b);
    for (std::size_t i = 0; i < nil; ++i) pw = pw * x;
    if (pw.is_zero()) ++cocycles;
  }
  std::set<Vec> coboundaries;
  for (const auto& t : oracle::all_vectors(p, a * b)) {
    FpMatrix tm(p, a, b);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < b; ++c) tm.set(r, c, t[r * b + c]);
    coboundaries.insert((nx * tm - tm * mx).data());
  }
  return cocycles / coboundaries.size();
}

}  // namespace

TEST(ExtProperty, DimensionMatchesBlockMatrixCount) {
  for (std::size_t nil : {2u, 3u, 4u}) {
    auto alg = trunc_poly(2, nil);
    std::vector<Module> mods;
    for (std::size_t i = 1; i <= nil; ++i) mods.push_back(jordan(alg, i));
    if (nil <= 3) mods.push_back(direct_sum(alg, {jordan(alg, 1), jordan(alg, 1)}).module);
    for (const auto& m : mods)
      for (const auto& n : mods) {
        if (m.dim() * n.dim() > 12) continue;
        std::size_t expected = brute_ext_size(m, n, nil);
        auto e = ext1(m, n);
        std::size_t size = 1;
        for (std::size_t i = 0; i < e.dim; ++i) size *= 2;
        EXPECT_EQ(size, expected) << m.dim() << " " << n.dim();
        EXPECT_EQ(e.dim, cocycle_data(n, m).class_basis.size());
      }
  }
}

TEST(ExtProperty, EveryClassGivesAShortExactSequence) {
  auto e = exterior(2, 2);
  auto indec = enumerate_indecomposables(e, 3).modules;
  for (const auto& m : indec)
    for (const auto& n : indec) {
      auto x = ext1(m, n);
      if (x.dim > 4) continue;
      for (const auto& c : oracle::all_vectors(2, x.dim)) {
        auto ext = extension_from_class(x, m, n, c);
        EXPECT_EQ(ext.sequence.middle().dim(), m.dim() + n.dim());
        bool zero = oracle::is_zero(c);
        if (zero) EXPECT_TRUE(iso(ext.sequence.middle(), direct_sum(e, {n, m}).module));
      }
    }
}
