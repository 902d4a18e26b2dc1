#include "rpquad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rpquad/errors.hpp"

namespace rpq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

PatchSet1D partition_interval(double a, double b, int P) {
    if (!(a < b)) throw InvalidArgument("partition_interval: need a < b");
    if (P < 1) throw InvalidArgument("partition_interval: need P >= 1");
    PatchSet1D set;
    set.a = a;
    set.b = b;
    set.patches.resize(static_cast<size_t>(P));
    const double h = (b - a) / P;
    for (int l = 0; l < P; ++l) {
        set.patches[l].index = l;
        set.patches[l].a = l == 0 ? a : a + l * h;
        set.patches[l].b = l == P - 1 ? b : a + (l + 1) * h;
    }
    return set;
}

double invert_param(const Patch1D& patch, double x) {
    const double slack = 1e-14 * std::max({1.0, std::abs(patch.a), std::abs(patch.b)});
    if (x < patch.a - slack || x > patch.b + slack) {
        throw OutOfPatch("invert_param: x = " + std::to_string(x) + " outside [" +
                         std::to_string(patch.a) + ", " + std::to_string(patch.b) + "]");
    }
    if (x <= patch.a) return -1.0;
    if (x >= patch.b) return 1.0;
    return std::clamp((x - patch.midpoint()) / patch.jacobian(), -1.0, 1.0);
}

/// Trigonometric interpolant of a sampled custom curve, used for c'.
struct Curve2D::Spectral {
    static constexpr int M = 256;
    std::vector<std::complex<double>> cx, cy;  // coefficients for k = -M/2+1 .. M/2-1

    explicit Spectral(const PointFn& pos) {
        std::vector<Vec2> samples(M);
        for (int j = 0; j < M; ++j) samples[j] = pos(kTwoPi * j / M);
        cx.resize(M - 1);
        cy.resize(M - 1);
        for (int k = -M / 2 + 1; k <= M / 2 - 1; ++k) {
            std::complex<double> sx{}, sy{};
            for (int j = 0; j < M; ++j) {
                const std::complex<double> e = std::polar(1.0, -kTwoPi * k * j / M);
                sx += samples[j].x * e;
                sy += samples[j].y * e;
            }
            cx[k + M / 2 - 1] = sx / static_cast<double>(M);
            cy[k + M / 2 - 1] = sy / static_cast<double>(M);
        }
    }

    [[nodiscard]] Vec2 derivative(double s) const {
        std::complex<double> dx{}, dy{};
        for (int k = -M / 2 + 1; k <= M / 2 - 1; ++k) {
            const std::complex<double> f = std::complex<double>(0.0, k) * std::polar(1.0, k * s);
            dx += cx[k + M / 2 - 1] * f;
            dy += cy[k + M / 2 - 1] * f;
        }
        return {dx.real(), dy.real()};
    }
};

Curve2D Curve2D::circle(double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
    Curve2D c;
    c.shape_ = CurveShape::Circle;
    c.radius_ = radius;
    return c;
}

Curve2D Curve2D::star() {
    Curve2D c;
    c.shape_ = CurveShape::Star;
    return c;
}

Curve2D Curve2D::jellyfish() {
    Curve2D c;
    c.shape_ = CurveShape::Jellyfish;
    return c;
}

Curve2D Curve2D::custom(PointFn position, PointFn derivative) {
    if (!position) throw InvalidArgument("custom curve needs a position function");
    Curve2D c;
    c.shape_ = CurveShape::Custom;
    c.custom_pos_ = std::move(position);
    if (derivative) {
        c.custom_der_ = std::move(derivative);
    } else {
        c.spectral_ = std::make_shared<const Spectral>(c.custom_pos_);
    }
    return c;
}

Curve2D Curve2D::parse(const std::string& text) {
    if (text == "star") return star();
    if (text == "jellyfish") return jellyfish();
    if (text == "circle") return circle(1.0);
    if (text.rfind("circle:", 0) == 0) {
        const std::string value = text.substr(7);
        size_t used = 0;
        double radius = 0.0;
        try {
            radius = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw InvalidArgument("bad circle radius in shape '" + text + "'");
        }
        return circle(radius);
    }
    throw InvalidArgument("unknown shape '" + text + "' (expected circle:R, star or jellyfish)");
}

std::string Curve2D::name() const {
    switch (shape_) {
        case CurveShape::Circle: return "circle:" + std::to_string(radius_);
        case CurveShape::Star: return "star";
        case CurveShape::Jellyfish: return "jellyfish";
        case CurveShape::Custom: return "custom";
    }
    return "unknown";
}

double Curve2D::r(double s) const {
    switch (shape_) {
        case CurveShape::Circle: return radius_;
        case CurveShape::Star: return 1.0 + 0.3 * std::cos(5.0 * s);
        case CurveShape::Jellyfish: return 1.0 + 0.3 * std::cos(4.0 * s + 2.0 * std::sin(s));
        case CurveShape::Custom: break;
    }
    return 0.0;
}

double Curve2D::dr(double s) const {
    switch (shape_) {
        case CurveShape::Circle: return 0.0;
        case CurveShape::Star: return -1.5 * std::sin(5.0 * s);
        case CurveShape::Jellyfish:
            return -0.3 * std::sin(4.0 * s + 2.0 * std::sin(s)) * (4.0 + 2.0 * std::cos(s));
        case CurveShape::Custom: break;
    }
    return 0.0;
}

double Curve2D::r_diff(double s, double delta) const {
    const double half = 0.5 * delta;
    switch (shape_) {
        case CurveShape::Circle: return 0.0;
        case CurveShape::Star:
            return -0.6 * std::sin(5.0 * s + 5.0 * half) * std::sin(5.0 * half);
        case CurveShape::Jellyfish: {
            const double arg = 4.0 * s + 2.0 * std::sin(s);
            const double darg = 4.0 * delta + 4.0 * std::cos(s + half) * std::sin(half);
            return -0.6 * std::sin(arg + 0.5 * darg) * std::sin(0.5 * darg);
        }
        case CurveShape::Custom: break;
    }
    return 0.0;
}

Vec2 Curve2D::position(double s) const {
    if (!radial()) return custom_pos_(s);
    const double rr = r(s);
    return {rr * std::cos(s), rr * std::sin(s)};
}

Vec2 Curve2D::derivative(double s) const {
    if (!radial()) return custom_der_ ? custom_der_(s) : spectral_->derivative(s);
    const double rr = r(s), d = dr(s);
    const double c = std::cos(s), sn = std::sin(s);
    return {d * c - rr * sn, d * sn + rr * c};
}

Vec2 Curve2D::normal(double s) const {
    const Vec2 d = derivative(s);
    const double len = norm(d);
    return {d.y / len, -d.x / len};
}

Vec2 Curve2D::chord(double s, double delta) const {
    if (!radial()) {
        if (std::abs(delta) > 6e-6) return position(s + delta) - position(s);
        return delta * derivative(s + 0.5 * delta);
    }
    const double half = 0.5 * delta;
    const double sh = std::sin(half);
    const double mid = s + half;
    const Vec2 de{-2.0 * std::sin(mid) * sh, 2.0 * std::cos(mid) * sh};
    const Vec2 e{std::cos(s), std::sin(s)};
    return r(s + delta) * de + r_diff(s, delta) * e;
}

bool Curve2D::contains(Vec2 p) const {
    if (radial()) {
        const double rho = norm(p);
        if (rho == 0.0) return true;
        return rho < r(std::atan2(p.y, p.x));
    }
    // Winding number against a fine polygon.
    constexpr int M = 4096;
    double winding = 0.0;
    Vec2 prev = position(0.0) - p;
    for (int j = 1; j <= M; ++j) {
        const Vec2 cur = position(kTwoPi * j / M) - p;
        winding += std::atan2(prev.x * cur.y - prev.y * cur.x, dot(prev, cur));
        prev = cur;
    }
    return std::abs(winding) > std::numbers::pi;
}

double Curve2D::max_radius() const {
    constexpr int M = 4096;
    double best = 0.0;
    for (int j = 0; j < M; ++j) best = std::max(best, norm(position(kTwoPi * j / M)));
    return best;
}

double CurvePatchSet::param(int patch, double t) const {
    return patch * H + 0.5 * H * (t + 1.0);
}

double CurvePatchSet::jacobian(int patch, double t) const {
    return 0.5 * H * curve.speed(param(patch, t));
}

CurvePatchSet partition_curve(const Curve2D& curve, int P) {
    if (P < 1) throw InvalidArgument("partition_curve: need P >= 1");
    return {curve, P, kTwoPi / P};
}

}  // namespace rpq
