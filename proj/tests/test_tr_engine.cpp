#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include <specrec/curve_io.hpp>
#include <specrec/special_series.hpp>
#include <specrec/tr_engine.hpp>

using namespace specrec;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

SpectralCurve hz() {
    RationalFunction x(Polynomial{Q(1), Q(0), Q(1)}, Polynomial{Q(0), Q(1)});
    return SpectralCurve("harer-zagier", CurveFunction(x), CurveFunction(RationalFunction::z()));
}

SpectralCurve log_curve() {
    return SpectralCurve("log01", CurveFunction(RationalFunction(), {{Q(0), Q(1)}, {Q(1), Q(1)}}),
                         CurveFunction(RationalFunction::z()));
}

MultiDifferential expected_hz_w11() {
    MultiDifferential w(1, 1);
    w.add_term({{Q(1), 2}}, Q(1, 32));
    w.add_term({{Q(1), 3}}, Q(-1, 16));
    w.add_term({{Q(1), 4}}, Q(-1, 16));
    w.add_term({{Q(-1), 2}}, Q(-1, 32));
    w.add_term({{Q(-1), 3}}, Q(-1, 16));
    w.add_term({{Q(-1), 4}}, Q(1, 16));
    return w;
}

/// Brute-force omega_{0,3} for HZ at fixed sample points: the recursion
/// residue evaluated with plain local series, never touching the pole-basis
/// bookkeeping of the engine. The global involution is sigma(q) = 1/q.
Rational brute_hz_w03(const Rational& z1, const Rational& z2, const Rational& z3) {
    int N = 12;
    Rational tot(0);
    for (Rational p : {Q(1), Q(-1)}) {
        // sigma(p+t) = 1/(p+t)
        LocalSeries pt = LocalSeries::constant(p, N) + LocalSeries::monomial(1, N);
        LocalSeries sig = pt.inverse();              // 1/(p+t) as a series around t=0
        LocalSeries sig_sh = sig - LocalSeries::constant(p, N);  // sigma(q) - p
        LocalSeries sigp = sig.derivative();
        // kernel denominator (y(q) - y(sigma q)) x'(q), x' = 1 - 1/z^2
        LocalSeries dy = (pt - sig);
        LocalSeries xp = LocalSeries::constant(Q(1), N) - (pt * pt).inverse();
        LocalSeries invden = (dy * xp).inverse();
        // int_sigma^q B(z1, .) = 1/(z1 - q) - 1/(z1 - sigma q)
        LocalSeries k1 = (LocalSeries::constant(z1, N) - pt).inverse() -
                         (LocalSeries::constant(z1, N) - LocalSeries::constant(p, N) - sig_sh).inverse();
        auto B_at = [&](const Rational& z, bool at_sigma) {
            LocalSeries d = at_sigma ? LocalSeries::constant(z, N) - LocalSeries::constant(p, N) - sig_sh
                                     : LocalSeries::constant(z, N) - pt;
            LocalSeries b = (d * d).inverse();
            return at_sigma ? b * sigp : b;
        };
        LocalSeries bracket = B_at(z2, false) * B_at(z3, true) + B_at(z3, false) * B_at(z2, true);
        LocalSeries integrand = k1 * invden * bracket * Q(1, 2);
        tot += integrand.coeff(-1);
    }
    return tot;
}

std::mt19937 rng(77);
Rational sample() {
    std::uniform_int_distribution<int> num(2, 9), den(1, 3);
    for (;;) {
        Rational v(num(rng), den(rng));
        if (v != Q(1) && v != Q(-1)) return v;  // keep away from the ramification points
    }
}

}  // namespace

TEST_CASE("omega_{0,2} is the Bergman kernel") {
    TREngine eng(hz());
    CHECK(eng.omega(0, 2).is_bergman());
    CHECK(eng.omega(0, 2).evaluate({Q(3), Q(5)}) == Q(1, 4));
}

TEST_CASE("omega_{0,3} on harer-zagier") {
    TREngine eng(hz());
    MultiDifferential w = eng.omega(0, 3);
    SECTION("matches the sum-over-ramification brute force at random triples") {
        for (int i = 0; i < 20; ++i) {
            Rational z1 = sample(), z2 = sample(), z3 = sample();
            CHECK(w.evaluate({z1, z2, z3}) == brute_hz_w03(z1, z2, z3));
        }
    }
    SECTION("tensor structure: points {1,-1}, orders (2,2,2)") {
        REQUIRE(w.terms().size() == 2);
        for (const auto& [key, c] : w.terms())
            for (const auto& f : key) CHECK(f.order == 2);
        CHECK(w.evaluate({Q(2), Q(3), Q(4)}) ==
              Q(-1, 2) / (Q(1) * Q(4) * Q(9)) + Q(1, 2) / (Q(9) * Q(16) * Q(25)));
    }
}

TEST_CASE("omega_{1,1} on harer-zagier") {
    TREngine eng(hz());
    MultiDifferential w = eng.omega(1, 1);
    CHECK(w == expected_hz_w11());
    SECTION("equals -z^3/(z^2-1)^4") {
        for (const auto& z : {Q(3), Q(5, 2), Q(-7, 3)}) {
            Rational expect = -z.pow(3) / (z * z - Q(1)).pow(4);
            CHECK(w.evaluate({z}) == expect);
        }
    }
    SECTION("poles only at ramification points, residue-free, order <= 4") {
        CHECK(w.is_residue_free());
        CHECK(w.max_order_at(Q(1)) == 4);
        CHECK(w.max_order_at(Q(-1)) == 4);
        CHECK(w.basis_points().size() == 2);
    }
}

TEST_CASE("symmetry of multi-variable differentials") {
    TREngine eng(hz());
    CHECK(eng.omega(0, 3).is_symmetric());
    CHECK(eng.omega(0, 4).is_symmetric());
    CHECK(eng.omega(1, 2).is_symmetric());
}

TEST_CASE("poles sit only at the ramification points") {
    TREngine eng(hz());
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}}) {
        for (const auto& p : eng.omega(g, n).basis_points())
            CHECK((p == Q(1) || p == Q(-1)));
    }
}

TEST_CASE("residue-freeness and loop equations") {
    TREngine eng(hz());
    for (int g : {1, 2, 3}) CHECK(eng.omega(g, 1).is_residue_free());
    CHECK(eng.linear_loop_check(1));
    CHECK(eng.linear_loop_check(2));
    TREngine engl(log_curve());
    CHECK(engl.linear_loop_check(1));
    CHECK(engl.linear_loop_check(2));
}

TEST_CASE("dilaton equation as an internal consistency oracle") {
    // sum_p Res_q Phi(q) omega_{g,n+1}(I, q) = (2-2g-n) omega_{g,n}(I)
    TREngine eng(hz());
    CurveFunction phi = primitive_phi(hz(), PrimitiveSide::Primal);
    auto pair_last_slot = [&](const MultiDifferential& w, int nvars) {
        MultiDifferential out(w.genus(), nvars - 1);
        for (const auto& p : ramification_points(hz(), 'x')) {
            int depth = 0;
            for (const auto& [key, c] : w.terms()) {
                (void)c;
                if (key.back().point == p) depth = std::max(depth, key.back().order);
            }
            if (depth == 0) continue;
            LogLocal phil = expand_curve_function(phi, p, depth + 1);
            for (const auto& [key, c] : w.terms()) {
                if (key.back().point != p) continue;
                Rational v = c * phil.plain.coeff(key.back().order - 1);
                if (!v.is_zero()) out.add_term(TensorKey(key.begin(), key.end() - 1), v);
            }
        }
        return out;
    };
    SECTION("(g,n) = (1,1)") {
        MultiDifferential lhs = pair_last_slot(eng.omega(1, 2), 2);
        MultiDifferential rhs = eng.omega(1, 1) * Q(-1);
        CHECK(lhs == rhs);
    }
    SECTION("(g,n) = (0,3)") {
        MultiDifferential lhs = pair_last_slot(eng.omega(0, 4), 4);
        MultiDifferential rhs = eng.omega(0, 3) * Q(-1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("free energy by the dilaton equation") {
    TREngine eng(hz());
    CHECK(eng.dilaton_free_energy(2).value == Q(-1, 240));
    CHECK(eng.dilaton_free_energy(3).value == Q(1, 1008));
    // B_{2g}/(2g(2g-2)): the convention the computation itself selects
    CHECK(eng.dilaton_free_energy(2).value == bernoulli(4) / Q(4 * 2));
    CHECK(eng.dilaton_free_energy(3).value == bernoulli(6) / Q(6 * 4));
    CHECK_THROWS_AS(eng.dilaton_free_energy(1), std::invalid_argument);
}

TEST_CASE("scaling covariance of the free energy") {
    // y -> 2z rescales omega_{0,1} by 2 and F_g by 2^{2-2g}
    RationalFunction x(Polynomial{Q(1), Q(0), Q(1)}, Polynomial{Q(0), Q(1)});
    SpectralCurve scaled("hz-2y", CurveFunction(x),
                         CurveFunction(RationalFunction(Polynomial{Q(0), Q(2)})));
    TREngine eng(hz()), engs(scaled);
    CHECK(engs.dilaton_free_energy(2).value == Q(1, 4) * eng.dilaton_free_energy(2).value);
    CHECK(engs.dilaton_free_energy(3).value == Q(1, 16) * eng.dilaton_free_energy(3).value);
}

TEST_CASE("log-TR correction") {
    SECTION("no log-vital points: correction vanishes") {
        TREngine eng(hz());
        CHECK(eng.logtr_correction(1).is_zero());
        CHECK(eng.logtr_correction(2).is_zero());
    }
    SECTION("closed form on an unramified covering with log y") {
        // swapped log curve: x = z, y = log z + log(z-1); omega_{g,1} is the
        // pure correction sum_i [t^{2g}](1/S(t)) (2g-1)! alpha^{2g-1} ... with
        // alpha = 1: coefficient -invS[2g] (2g-1)! at order 2g per atom
        SpectralCurve swapped("swapped-log", CurveFunction(RationalFunction::z()),
                              CurveFunction(RationalFunction(), {{Q(0), Q(1)}, {Q(1), Q(1)}}));
        TREngine eng(swapped);
        LocalSeries invS = s_function_series(SKind::InverseS, 4);
        for (int g : {1, 2}) {
            MultiDifferential w = eng.omega(g, 1);
            MultiDifferential expect(g, 1);
            Rational c = -invS.coeff(2 * g) * factorial(2 * g - 1);
            expect.add_term({{Q(0), 2 * g}}, c);
            expect.add_term({{Q(1), 2 * g}}, c);
            CHECK(w == expect);
        }
        // g=1 coefficient explicitly: -(-1/24) * 1! = 1/24
        CHECK(eng.omega(1, 1).evaluate({Q(3)}) == Q(1, 24) * (Q(1, 9) + Q(1, 4)));
    }
    SECTION("single atom brute-force cross-check (a=0, alpha=1, g=1)") {
        SpectralCurve c("single", CurveFunction(RationalFunction::z()),
                        CurveFunction(RationalFunction(), {{Q(0), Q(1)}}));
        TREngine eng(c);
        // Res_{q->0} (1/(z-q) - 1/z)(-1/24) d^2/dq^2 log(q) dq = 1/(24 z^2)
        MultiDifferential expect(1, 1);
        expect.add_term({{Q(0), 2}}, Q(1, 24));
        CHECK(eng.omega(1, 1) == expect);
    }
}

TEST_CASE("lemma 3.1 identity") {
    SECTION("harer-zagier: both sides vanish") {
        TREngine eng(hz());
        for (int g : {2, 3}) {
            auto r = eng.lemma31_check(g);
            CHECK(r.side == "primal");
            CHECK(r.lhs == Q(0));
            CHECK(r.rhs == Q(0));
            CHECK(r.holds);
        }
    }
    SECTION("log curve: checked on the dual side where the atoms live") {
        TREngine eng(log_curve());
        auto r = eng.lemma31_check(2);
        CHECK(r.side == "dual");
        CHECK(r.holds);
        CHECK(r.lhs == r.rhs);
    }
    SECTION("log-vital y: the primal identity with a nonempty right side") {
        // x = (z-2)^2/2, y = log z: dx is regular at 0, so 0 is log-vital
        SpectralCurve c("logy", CurveFunction(RationalFunction(Polynomial{Q(2), Q(-2), Q(1, 2)})),
                        CurveFunction::log_of_z());
        TREngine eng(c);
        auto r = eng.lemma31_check(2);
        CHECK(r.side == "primal");
        CHECK(r.holds);
    }
}

TEST_CASE("engine guards") {
    TREngine eng(hz());
    CHECK_THROWS_AS(eng.omega(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(eng.omega(4, 3), std::invalid_argument);  // 2g+n-2 > 8
    CHECK_THROWS_AS(eng.omega(1, 5), std::invalid_argument);  // n > 4
    SECTION("irrational ramification reports PATH_UNAVAILABLE") {
        // x = z^3/3 - 2z: ramification at z^2 = 2
        RationalFunction x(Polynomial{Q(0), Q(-2), Q(0), Q(1, 3)});
        SpectralCurve c("irr", CurveFunction(x), CurveFunction(RationalFunction::z()));
        CHECK_THROWS_AS(TREngine(c), TRPathError);
    }
}

TEST_CASE("memoization is concurrency-safe") {
    TREngine eng(hz());
    MultiDifferential a(0, 0), b(0, 0);
    std::thread t1([&] { a = eng.omega(2, 1); });
    std::thread t2([&] { b = eng.omega(2, 1); });
    t1.join();
    t2.join();
    CHECK(a == b);
    CHECK(a == eng.omega(2, 1));
}
