#include "rpquad/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <string>

#include "rpquad/errors.hpp"

namespace rpq {

namespace {

using NoPromote = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

void check_finite(double x, const char* what) {
    if (std::isnan(x)) throw InvalidArgument(std::string(what) + ": NaN argument");
}

void check_j(double x, const char* what) {
    check_finite(x, what);
    if (x < 0.0) throw DomainError(std::string(what) + ": argument must be >= 0");
}

void check_y(double x, const char* what) {
    check_finite(x, what);
    if (!(x > 0.0)) throw DomainError(std::string(what) + ": argument must be > 0");
}

}  // namespace

double bessel_j0(double x) {
    check_j(x, "bessel_j0");
    return boost::math::cyl_bessel_j(0, x, NoPromote());
}

double bessel_j1(double x) {
    check_j(x, "bessel_j1");
    return boost::math::cyl_bessel_j(1, x, NoPromote());
}

double bessel_y0(double x) {
    check_y(x, "bessel_y0");
    return boost::math::cyl_neumann(0, x, NoPromote());
}

double bessel_y1(double x) {
    check_y(x, "bessel_y1");
    return boost::math::cyl_neumann(1, x, NoPromote());
}

std::complex<double> hankel1(int n, double x) {
    if (n == 0) return {bessel_j0(x), bessel_y0(x)};
    if (n == 1) return {bessel_j1(x), bessel_y1(x)};
    throw InvalidArgument("hankel1: only orders 0 and 1 are supported, got " + std::to_string(n));
}

HankelPair hankel1_01(double x) {
    check_y(x, "hankel1_01");
    return {{boost::math::cyl_bessel_j(0, x, NoPromote()), boost::math::cyl_neumann(0, x, NoPromote())},
            {boost::math::cyl_bessel_j(1, x, NoPromote()), boost::math::cyl_neumann(1, x, NoPromote())}};
}

}  // namespace rpq
