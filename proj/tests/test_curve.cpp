#include <catch2/catch_amalgamated.hpp>

#include <specrec/curve_io.hpp>

using namespace specrec;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

SpectralCurve hz() {
    RationalFunction x(Polynomial{Q(1), Q(0), Q(1)}, Polynomial{Q(0), Q(1)});
    return SpectralCurve("harer-zagier", CurveFunction(x), CurveFunction(RationalFunction::z()));
}

SpectralCurve log_curve() {
    return SpectralCurve("log01",
                         CurveFunction(RationalFunction(), {{Q(0), Q(1)}, {Q(1), Q(1)}}),
                         CurveFunction(RationalFunction::z()));
}

}  // namespace

TEST_CASE("parse_curve") {
    SECTION("harer-zagier config") {
        auto c = parse_curve_string(
            R"({"label":"hz","x":{"rational":{"num":["1","0","1"],"den":["0","1"]}},"y":{"rational":{"num":[0,1]}}})");
        auto ram = ramification_points(c, 'x');
        REQUIRE(ram.size() == 2);
        CHECK((ram[0] == Q(1) || ram[0] == Q(-1)));
        CHECK(ram[0] != ram[1]);
    }
    SECTION("gaiotto r=2 as log atoms") {
        auto c = parse_curve_string(
            R"({"label":"g2","x":{"logs":[{"a":"1","coeff":"1"},{"a":"-1","coeff":"1"}]},"y":{"rational":{"num":[0,1]}}})");
        CHECK(c.x().log_atoms().size() == 2);
        auto ram = ramification_points(c, 'x');
        REQUIRE(ram.size() == 1);
        CHECK(ram[0] == Q(0));
    }
    SECTION("non-simple ramification is rejected") {
        CHECK_THROWS_AS(parse_curve_string(
                            R"({"label":"cube","x":{"rational":{"num":[0,0,0,1]}},"y":{"rational":{"num":[0,1]}}})"),
                        CurveError);
    }
    SECTION("schema violations") {
        CHECK_THROWS_AS(parse_curve_string("not json"), SchemaError);
        CHECK_THROWS_AS(parse_curve_string(R"({"label":"x"})"), SchemaError);
        CHECK_THROWS_AS(parse_curve_string(
                            R"({"x":{"rational":{"num":[0,1]}},"y":{"logs":[{"a":0,"coeff":1}]}})"),
                        SchemaError);
    }
    SECTION("framing moves log-vital points of y into dx") {
        // x = z^2/2 with framing 1 against y = log z: x gains a log atom at 0
        auto c = parse_curve_string(
            R"({"label":"framed","x":{"rational":{"num":[0,0,"1/2"]}},"y":{"kind":"log_z"},"framing":1})");
        REQUIRE(c.x().log_atoms().size() == 1);
        CHECK(c.x().log_atoms()[0].branch_point == Q(0));
        CHECK(c.x().log_atoms()[0].coefficient == Q(1));
        // the atom of x at 0 now sits on a pole of dy, so nothing is log-vital
        auto rps = classify_residue_points(c);
        CHECK(rps.log_x.empty());
    }
}

TEST_CASE("differentials") {
    CHECK(log_curve().x().differential() ==
          RationalFunction(Polynomial{Q(-1), Q(2)}, Polynomial{Q(0), Q(-1), Q(1)}));
    CHECK(CurveFunction::log_of_z().differential() ==
          RationalFunction(Polynomial{Q(1)}, Polynomial{Q(0), Q(1)}));
    CHECK(hz().x().differential() ==
          RationalFunction(Polynomial{Q(-1), Q(0), Q(1)}, Polynomial{Q(0), Q(0), Q(1)}));
}

TEST_CASE("ramification points") {
    CHECK(ramification_points(hz(), 'x') == std::vector<Rational>{Q(1), Q(-1)});
    CHECK(ramification_points(hz(), 'y').empty());
    CHECK(ramification_points(log_curve(), 'x') == std::vector<Rational>{Q(1, 2)});
}

TEST_CASE("deck transformations") {
    SECTION("harer-zagier at p=1: global involution z -> 1/z") {
        DeckSeries d = deck_transformation(hz(), Q(1), 10);
        // 1/(1+t) - 1 = -t + t^2 - t^3 + ...
        for (int k = 1; k <= 10; ++k) CHECK(d.sigma.coeff(k) == Q((k % 2) ? -1 : 1));
    }
    SECTION("even covering gives sigma = -t exactly") {
        SpectralCurve c("even", CurveFunction(RationalFunction(Polynomial{Q(0), Q(0), Q(1, 2)})),
                        CurveFunction(RationalFunction::z()));
        DeckSeries d = deck_transformation(c, Q(0), 12);
        CHECK(d.sigma.coeff(1) == Q(-1));
        for (int k = 2; k <= 12; ++k) CHECK(d.sigma.coeff(k) == Q(0));
    }
    SECTION("gaiotto r=2 at p=0: sigma = -t exactly") {
        SpectralCurve c("g", CurveFunction(RationalFunction(), {{Q(1), Q(1)}, {Q(-1), Q(1)}}),
                        CurveFunction(RationalFunction::z()));
        DeckSeries d = deck_transformation(c, Q(0), 12);
        CHECK(d.sigma.coeff(1) == Q(-1));
        for (int k = 2; k <= 12; ++k) CHECK(d.sigma.coeff(k) == Q(0));
    }
    SECTION("involution and consistency properties") {
        for (const auto& curve : {hz(), log_curve()}) {
            for (const auto& p : ramification_points(curve, 'x')) {
                DeckSeries d = deck_transformation(curve, p, 14);
                LocalSeries comp = d.sigma.compose(d.sigma);
                CHECK(comp.coeff(1) == Q(1));
                for (int k = 2; k <= 12; ++k) CHECK(comp.coeff(k) == Q(0));
                LocalSeries X = expand_curve_function(curve.x(), p, 14).plain;
                LocalSeries err = X.compose(d.sigma) - X;
                for (int k = 0; k <= 12; ++k) CHECK(err.coeff(k) == Q(0));
            }
        }
    }
}

TEST_CASE("primitive of the one-form") {
    SECTION("harer-zagier primal: z^2/2 - log z") {
        CurveFunction phi = primitive_phi(hz(), PrimitiveSide::Primal);
        CHECK(phi.rational_part() == RationalFunction(Polynomial{Q(0), Q(0), Q(1, 2)}));
        REQUIRE(phi.log_atoms().size() == 1);
        CHECK(phi.log_atoms()[0].branch_point == Q(0));
        CHECK(phi.log_atoms()[0].coefficient == Q(-1));
    }
    SECTION("log curve primal: 2z + log(z-1)") {
        CurveFunction phi = primitive_phi(log_curve(), PrimitiveSide::Primal);
        CHECK(phi.rational_part() == RationalFunction(Polynomial{Q(0), Q(2)}));
        REQUIRE(phi.log_atoms().size() == 1);
        CHECK(phi.log_atoms()[0].branch_point == Q(1));
        CHECK(phi.log_atoms()[0].coefficient == Q(1));
    }
    SECTION("harer-zagier dual: z^2/2 + log z") {
        CurveFunction phi = primitive_phi(hz(), PrimitiveSide::Dual);
        CHECK(phi.rational_part() == RationalFunction(Polynomial{Q(0), Q(0), Q(1, 2)}));
        REQUIRE(phi.log_atoms().size() == 1);
        CHECK(phi.log_atoms()[0].coefficient == Q(1));
    }
    SECTION("derivative of the primitive recovers y dx") {
        for (const auto& curve : {hz(), log_curve()}) {
            CurveFunction phi = primitive_phi(curve, PrimitiveSide::Primal);
            RationalFunction expect = curve.y().rational_part() * curve.x().differential();
            CHECK(phi.differential() == expect);
        }
    }
    SECTION("dual side requires plain rational x") {
        CHECK_THROWS_AS(primitive_phi(log_curve(), PrimitiveSide::Dual), CurveError);
    }
}

TEST_CASE("residue point classification") {
    SECTION("harer-zagier") {
        auto rps = classify_residue_points(hz());
        CHECK(rps.ram_x == std::vector<Rational>{Q(1), Q(-1)});
        CHECK(rps.ram_y.empty());
        CHECK(rps.log_x.empty());
        CHECK(rps.log_y.empty());
        // y = z is singular only at infinity, where Res y dx = 1
        REQUIRE(rps.poles_primal.size() == 1);
        CHECK(rps.poles_primal[0].infinite);
        // x has poles at 0 and infinity; Res x dy = 1 at 0 and -1 at infinity
        REQUIRE(rps.poles_dual.size() == 2);
        CHECK(rps.poles_dual[0] == CurvePoint(Q(0)));
        CHECK(rps.poles_dual[1].infinite);
    }
    SECTION("r-spin: every b-set empty") {
        RationalFunction x(Polynomial{Q(0), Q(-1), Q(0), Q(1, 3)});
        SpectralCurve c("rspin", CurveFunction(x), CurveFunction(RationalFunction::z()));
        auto rps = classify_residue_points(c);
        CHECK(rps.poles_primal.empty());
        CHECK(rps.poles_dual.empty());
        CHECK(rps.log_x.empty());
        CHECK(rps.log_y.empty());
    }
    SECTION("log curve: atoms of x are log-vital") {
        auto rps = classify_residue_points(log_curve());
        REQUIRE(rps.log_x.size() == 2);
        CHECK(rps.log_x[0].branch_point == Q(0));
        CHECK(rps.log_x[1].branch_point == Q(1));
        CHECK(rps.log_x[0].coefficient == Q(1));  // alpha^vee = 1/coefficient = 1
        CHECK(rps.poles_dual.empty());            // infinity is a log point of x here
        REQUIRE(rps.poles_primal.size() == 1);    // Res_inf y dx = -(a_1+a_2) != 0
        CHECK(rps.poles_primal[0].infinite);
    }
    SECTION("classification is stable under constant shifts") {
        RationalFunction shifted_x =
            hz().x().rational_part() + RationalFunction::constant(Q(7, 3));
        SpectralCurve c("hz+c", CurveFunction(shifted_x), CurveFunction(RationalFunction::z()));
        auto a = classify_residue_points(hz());
        auto b = classify_residue_points(c);
        CHECK(a.ram_x == b.ram_x);
        CHECK(a.poles_primal == b.poles_primal);
        CHECK(a.poles_dual == b.poles_dual);
    }
}

TEST_CASE("curve fingerprints") {
    CHECK(hz().fingerprint() == hz().fingerprint());
    CHECK(hz().fingerprint() != log_curve().fingerprint());
}
