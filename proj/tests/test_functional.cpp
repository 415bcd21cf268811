#include "wcheb/functional.hpp"

#include <catch_amalgamated.hpp>

using namespace wcheb;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num) / Rational(den); }

template <Scalar S>
S v(long long num, long long den = 1) {
    return S(num) / S(den);
}

template <class F>
Error error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    FAIL("no error raised");
    return Error(ErrorKind::ParseError, "");
}

}  // namespace

TEMPLATE_TEST_CASE("prefix table", "", double, Rational) {
    using S = TestType;
    const WeightSeq<S> p{S(1), S(1), S(1)};
    const Seq<S> a{S(1), S(2), S(3)};
    const auto t = prefix_table(p, a, a);
    CHECK(t.P == std::vector<S>{S(1), S(2), S(3)});
    CHECK(t.A == std::vector<S>{S(1), S(3), S(6)});
    CHECK(t.Abar == std::vector<S>{S(5), S(3), S(0)});
    CHECK(t.Pbar == std::vector<S>{S(2), S(1), S(0)});

    const auto z = prefix_table(WeightSeq<S>{S(1), S(0), S(0)}, Seq<S>{S(5), S(7), S(9)}, a);
    CHECK(z.A == std::vector<S>{S(5), S(5), S(5)});

    const auto h = prefix_table(WeightSeq<S>{S(1), v<S>(-1, 2), S(1)}, a, a);
    CHECK(h.P == std::vector<S>{S(1), v<S>(1, 2), v<S>(3, 2)});

    CHECK(error_of([&] { (void)prefix_table(p, Seq<S>{S(1), S(2)}, a); }).kind() == ErrorKind::LengthMismatch);
}

TEMPLATE_TEST_CASE("every route reproduces the worked values", "", double, Rational) {
    using S = TestType;
    const WeightSeq<S> p2{S(1), S(1)};
    const Seq<S> up{S(1), S(2)};
    CHECK(cheb_direct(p2, up, up) == v<S>(1, 4));
    CHECK(cheb_via_det_identity(p2, up, up) == v<S>(1, 4));
    CHECK(cheb_via_mean_identity(p2, up, up) == v<S>(1, 4));
    CHECK(cheb_via_tail_identity(p2, up, up) == v<S>(1, 4));

    const WeightSeq<S> p3{S(1), S(1), S(1)};
    const Seq<S> a{S(1), S(2), S(3)};
    const Seq<S> b{S(3), S(2), S(1)};
    if constexpr (is_exact_v<S>) {
        CHECK(cheb_direct(p3, a, b) == q(-2, 3));
        CHECK(cheb_via_det_identity(p3, a, b) == q(-2, 3));
        CHECK(cheb_via_mean_identity(p3, a, b) == q(-2, 3));
        CHECK(cheb_via_tail_identity(p3, a, b) == q(-2, 3));
    } else {
        CHECK(cheb_direct(p3, a, b) == Catch::Approx(-2.0 / 3.0).epsilon(1e-15));
        CHECK(cheb_via_det_identity(p3, a, b) == Catch::Approx(-2.0 / 3.0).epsilon(1e-15));
        CHECK(cheb_via_mean_identity(p3, a, b) == Catch::Approx(-2.0 / 3.0).epsilon(1e-15));
        CHECK(cheb_via_tail_identity(p3, a, b) == Catch::Approx(-2.0 / 3.0).epsilon(1e-15));
    }
}

TEMPLATE_TEST_CASE("constants annihilate the functional", "", double, Rational) {
    using S = TestType;
    const WeightSeq<S> p{v<S>(1, 2), S(2), v<S>(5, 4)};
    const Seq<S> c = Seq<S>::constant(3, S(4));
    const Seq<S> b{S(-1), v<S>(7, 2), S(2)};
    CHECK(cheb_direct(p, c, b) == S(0));
    CHECK(cheb_direct(p, b, c) == S(0));
    CHECK(cheb_via_det_identity(p, b, c) == S(0));
    CHECK(cheb_via_mean_identity(p, b, c) == S(0));
    CHECK(cheb_via_tail_identity(p, c, b) == S(0));
}

TEMPLATE_TEST_CASE("degenerate weight sums", "", double, Rational) {
    using S = TestType;
    const Seq<S> a{S(1), S(2), S(3)};
    CHECK(error_of([&] { (void)cheb_direct(WeightSeq<S>{S(1), S(-1)}, Seq<S>{S(1), S(2)}, Seq<S>{S(1), S(2)}); })
              .kind() == ErrorKind::ZeroTotalWeight);

    const WeightSeq<S> p{S(1), S(-1), S(1)};
    const Error e = error_of([&] { (void)cheb_via_mean_identity(p, a, a); });
    CHECK(e.kind() == ErrorKind::ZeroPrefixSum);
    CHECK(e.index() == 2u);

    const WeightSeq<S> tail_zero{S(1), S(1), S(0)};
    CHECK(error_of([&] { (void)cheb_via_tail_identity(tail_zero, a, a); }).kind() == ErrorKind::ZeroTailSum);

    const auto routes = evaluate_routes(p, a, a);
    CHECK_FALSE(routes.mean.has_value());
    CHECK_FALSE(routes.tail.has_value());
    CHECK_FALSE(routes.mean_unavailable.empty());
    CHECK(routes.direct == routes.det);
}

TEMPLATE_TEST_CASE("summation by parts", "", double, Rational) {
    using S = TestType;
    auto s1 = abel_sum(Seq<S>{S(1), S(1)}, Seq<S>{S(0), S(5)}, 1, 2);
    CHECK(s1.lhs == S(5));
    CHECK(s1.rhs == S(5));
    auto s2 = abel_sum(Seq<S>{S(1), S(2), S(3)}, Seq<S>{S(1), S(4), S(9)}, 1, 3);
    CHECK(s2.lhs == S(13));
    CHECK(s2.rhs == S(13));
    auto s3 = abel_sum(Seq<S>{S(4), S(-2), S(7), S(1)}, Seq<S>::constant(4, S(3)), 2, 4);
    CHECK(s3.lhs == S(0));
    CHECK(s3.rhs == S(0));
    CHECK(error_of([] { (void)abel_sum(Seq<S>{S(1), S(2)}, Seq<S>{S(1), S(2)}, 2, 2); }).kind() ==
          ErrorKind::BadRange);
    CHECK(error_of([] { (void)abel_sum(Seq<S>{S(1), S(2)}, Seq<S>{S(1), S(2)}, 1, 3); }).kind() ==
          ErrorKind::BadRange);
}

TEST_CASE("float routes survive a large common offset") {
    const WeightSeq<double> p{1.0, 2.0, 3.0, 1.5};
    const RealSeq a{1e8, 1e8 + 1, 1e8 + 3, 1e8 + 2};
    const RealSeq b{1e8, 1e8 + 2, 1e8 + 1, 1e8 + 4};
    const double exact = 22.0 / 225.0;
    const auto r = evaluate_routes(p, a, b);
    CHECK(r.direct == Catch::Approx(exact).epsilon(1e-12));
    CHECK(r.det == Catch::Approx(exact).epsilon(1e-12));
    CHECK(*r.mean == Catch::Approx(exact).epsilon(1e-12));
    CHECK(*r.tail == Catch::Approx(exact).epsilon(1e-12));
    CHECK(r.agree(Tolerance{}));
}

TEST_CASE("route agreement reports the largest gap") {
    const WeightSeq<Rational> p{q(1), q(2), q(3)};
    const RationalSeq a{q(1), q(-2), q(5, 3)};
    const RationalSeq b{q(0), q(4), q(-1, 7)};
    const auto r = evaluate_routes(p, a, b);
    CHECK(r.max_discrepancy() == 0);
    CHECK(r.agree(Tolerance{}));
    CHECK(r.scale >= 1.0);
}
