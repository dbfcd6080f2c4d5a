#include <catch2/catch_amalgamated.hpp>

#include <specrec/catalog.hpp>
#include <specrec/duality.hpp>
#include <specrec/tr_engine.hpp>

using namespace specrec;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

// Deep-recursion exercise: genus 4 needs omega_{0,5} through the recursion,
// beyond the default complexity guard, and both paths must still agree.
TEST_CASE("genus 4 on harer-zagier across both paths") {
    auto entry = catalog_get("harer-zagier", {});
    TREngineOptions wide;
    wide.max_euler = 9;
    wide.max_vars = 5;
    TREngine tr(entry.curve, wide);
    DualityEngine dual(entry.curve);
    Rational f4 = tr.dilaton_free_energy(4).value;
    CHECK(f4 == bernoulli(8) / Q(8 * 6));  // -1/1440
    CHECK(f4 == dual.free_energy(4).value.value);
    CHECK(f4 == *entry.closed_form(4));
}
