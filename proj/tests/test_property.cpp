#include <doctest.h>

#include <troppatch/feasibility.hpp>
#include <troppatch/gf2.hpp>
#include <troppatch/oriented_matroid.hpp>
#include <troppatch/poset.hpp>

#include <set>

// Seeded randomized property tests; deterministic across runs.

using namespace troppatch;

namespace {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

} // namespace

TEST_CASE("random GF(2) matrices: rank and kernel laws") {
    Rng rng(0x5eed0001);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + rng.below(7), cols = 1 + rng.below(7);
        GF2Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng.next() & 1) m.set(r, c, true);
        auto rk = rank_kernel(m);
        CHECK(rk.rank == gf2_rank(m.transpose()));
        CHECK(rk.rank + static_cast<int>(rk.kernel_basis.size()) == cols);
        for (const auto& v : rk.kernel_basis) {
            auto img = m.apply(v);
            for (uint8_t b : img) CHECK(b == 0);
        }
        // kernel vectors independent
        GF2Span span(cols);
        for (const auto& v : rk.kernel_basis) CHECK(span.add(v));
    }
}

TEST_CASE("random affine subspaces: canonical form is presentation independent") {
    Rng rng(0x5eed0002);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 2 + rng.below(5);
        int d = rng.below(std::min(m, 4) + 1);
        uint64_t base = rng.next() & ((1ull << m) - 1);
        std::vector<uint64_t> dirs;
        for (int i = 0; i < d; ++i) dirs.push_back(rng.next() & ((1ull << m) - 1));
        Z2AffineSubspace h(m, base, dirs);
        // re-present from its own points, in random rotation
        auto pts = h.points();
        std::vector<uint64_t> shuffled = pts;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(static_cast<int>(i))]);
        auto h2 = Z2AffineSubspace::from_points(m, shuffled);
        CHECK(h == h2);
        // re-present with randomized generators of the same coset
        uint64_t base2 = pts[rng.below(static_cast<int>(pts.size()))];
        std::vector<uint64_t> dirs2;
        for (int i = 0; i < 2 * h.dim(); ++i)
            dirs2.push_back(pts[rng.below(static_cast<int>(pts.size()))] ^ base2);
        Z2AffineSubspace h3(m, base2, dirs2);
        CHECK((h3.dim() <= h.dim()));
        if (h3.dim() == h.dim()) CHECK(h == h3);
        // idempotence
        Z2AffineSubspace h4(m, h.base_point(), h.direction_basis());
        CHECK(h == h4);
        // subspace counts, when small enough to enumerate
        if (h.dim() <= 3) {
            for (int p = 0; p <= h.dim(); ++p) {
                auto subs = enumerate_affine_subspaces(h, p);
                unsigned long long expect =
                    (1ull << (h.dim() - p)) * gaussian_binomial_2(h.dim(), p);
                CHECK(subs.size() == expect);
                for (const auto& g : subs)
                    for (uint64_t pt : g.points()) CHECK(h.contains(pt));
            }
        }
    }
}

TEST_CASE("random realizations: covector sets satisfy the axioms and Zaslavsky") {
    Rng rng(0x5eed0003);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + rng.below(3); // rows
        int d = 2 + rng.below(2); // ambient
        std::vector<QVec> rows;
        for (int i = 0; i < n; ++i) {
            QVec row;
            bool nonzero = false;
            for (int j = 0; j < d; ++j) {
                long long v = static_cast<long long>(rng.below(5)) - 2;
                nonzero = nonzero || (v != 0);
                row.push_back(Rat(v));
            }
            if (!nonzero) row[0] = Rat(1);
            rows.push_back(std::move(row));
        }
        auto om = covectors_from_realization(rows, d);
        auto val = validate_covectors(om);
        CHECK(val.report.ok);
        // sampled points give sign vectors that must appear among the covectors
        for (int s = 0; s < 20; ++s) {
            QVec x;
            for (int j = 0; j < d; ++j)
                x.push_back(Rat(static_cast<long long>(rng.below(9)) - 4, 1 + rng.below(3)));
            SignVector sv;
            for (const auto& row : rows) {
                Rat dot(0);
                for (int j = 0; j < d; ++j) dot = dot + row[j] * x[j];
                sv.push_back(static_cast<int8_t>(dot.sign()));
            }
            CHECK(om.has(sv));
        }
        // tope count against the Whitney-sum characteristic polynomial
        if (val.underlying.loopfree()) {
            long long zas = poly_eval(characteristic_polynomial(val.underlying), -1);
            if (val.underlying.rank % 2) zas = -zas;
            CHECK(static_cast<long long>(topes(om).size()) == zas);
        }
    }
}

TEST_CASE("random posets: isomorphism under relabelling, chain counts") {
    Rng rng(0x5eed0004);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 2 + rng.below(8);
        // random DAG on 0..m-1 with edges i -> j only for i < j, then closure
        std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
        for (int i = 0; i < m; ++i) leq[i][i] = 1;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (rng.below(3) == 0) leq[i][j] = 1;
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i)
                if (leq[i][k])
                    for (int j = 0; j < m; ++j)
                        if (leq[k][j]) leq[i][j] = 1;
        std::vector<std::string> labels;
        for (int i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i));
        auto p = FinitePoset::from_leq(labels, leq);
        // random permutation
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        for (int i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<std::vector<uint8_t>> leq2(m, std::vector<uint8_t>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) leq2[perm[i]][perm[j]] = leq[i][j];
        auto q = FinitePoset::from_leq(labels, leq2);
        auto iso = poset_isomorphic(p, q);
        REQUIRE(iso.isomorphic);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                CHECK(p.leq(i, j) == q.leq(iso.mapping[i], iso.mapping[j]));
        // chain-count DP agrees with the order complex
        auto counts = p.chain_counts();
        std::vector<long long> by_size;
        for (const auto& s : order_complex(p).simplices) {
            if (by_size.size() < s.size()) by_size.resize(s.size(), 0);
            by_size[s.size() - 1]++;
        }
        CHECK(by_size == counts);
    }
}

TEST_CASE("fourier-motzkin on randomized systems with planted solutions") {
    Rng rng(0x5eed0005);
    for (int trial = 0; trial < 30; ++trial) {
        int vars = 1 + rng.below(4);
        int cons = 1 + rng.below(6);
        // plant a rational solution and generate satisfied constraints
        QVec x0;
        for (int j = 0; j < vars; ++j)
            x0.push_back(Rat(static_cast<long long>(rng.below(11)) - 5, 1 + rng.below(4)));
        std::vector<LinCon> sys;
        for (int i = 0; i < cons; ++i) {
            LinCon c;
            for (int j = 0; j < vars; ++j)
                c.coef.push_back(Rat(static_cast<long long>(rng.below(7)) - 3));
            Rat val(0);
            for (int j = 0; j < vars; ++j) val = val + c.coef[j] * x0[j];
            int kind = rng.below(3);
            if (kind == 0) {
                c.rel = Rel::EQ;
                c.rhs = val;
            } else if (kind == 1) {
                c.rel = Rel::GE;
                c.rhs = val - Rat(rng.below(3));
            } else {
                c.rel = Rel::GT;
                c.rhs = val - Rat(1 + rng.below(3));
            }
            sys.push_back(std::move(c));
        }
        auto sol = FourierMotzkin::solve(sys, vars);
        REQUIRE(sol.has_value());
        for (const auto& c : sys) {
            Rat val(0);
            for (int j = 0; j < vars; ++j) val = val + c.coef[j] * (*sol)[j];
            if (c.rel == Rel::EQ) CHECK(val == c.rhs);
            if (c.rel == Rel::GE) CHECK(val >= c.rhs);
            if (c.rel == Rel::GT) CHECK(val > c.rhs);
        }
        // appending a contradictory pair makes it infeasible
        LinCon a, b;
        a.coef.assign(vars, Rat(0));
        b.coef.assign(vars, Rat(0));
        int pivot = rng.below(vars);
        a.coef[pivot] = Rat(1);
        a.rhs = Rat(7);
        a.rel = Rel::GE;
        b.coef[pivot] = Rat(-1);
        b.rhs = Rat(-6);
        b.rel = Rel::GE; // x <= 6 and x >= 7
        sys.push_back(a);
        sys.push_back(b);
        CHECK_FALSE(FourierMotzkin::feasible(sys, vars));
    }
}
