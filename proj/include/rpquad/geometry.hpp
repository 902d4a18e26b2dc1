#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rpquad/vec2.hpp"

namespace rpq {

/// Affine patch xi(t) = (h/2) t + mid of [a, b].
struct Patch1D {
    int index = 0;
    double a = 0.0;
    double b = 0.0;

    [[nodiscard]] double length() const { return b - a; }
    [[nodiscard]] double midpoint() const { return 0.5 * (a + b); }
    [[nodiscard]] double jacobian() const { return 0.5 * (b - a); }
    [[nodiscard]] double xi(double t) const { return jacobian() * t + midpoint(); }
};

struct PatchSet1D {
    double a = 0.0;
    double b = 0.0;
    std::vector<Patch1D> patches;

    [[nodiscard]] int size() const { return static_cast<int>(patches.size()); }
    [[nodiscard]] double patch_length() const { return (b - a) / size(); }
};

/// P uniform patches covering [a, b].
[[nodiscard]] PatchSet1D partition_interval(double a, double b, int P);

/// t_x with xi(t_x) = x; throws OutOfPatch when x lies outside the patch.
[[nodiscard]] double invert_param(const Patch1D& patch, double x);

enum class CurveShape { Circle, Star, Jellyfish, Custom };

/// Closed 2*pi-periodic curve, counterclockwise.
class Curve2D {
public:
    using PointFn = std::function<Vec2(double)>;

    [[nodiscard]] static Curve2D circle(double radius = 1.0);
    [[nodiscard]] static Curve2D star();
    [[nodiscard]] static Curve2D jellyfish();

    /// User curve. When `derivative` is empty it is obtained by spectral
    /// differentiation of a trigonometric interpolant of `position`.
    [[nodiscard]] static Curve2D custom(PointFn position, PointFn derivative = {});

    /// Parses "circle:R", "circle", "star" or "jellyfish".
    [[nodiscard]] static Curve2D parse(const std::string& text);

    [[nodiscard]] CurveShape shape() const { return shape_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] std::string name() const;

    [[nodiscard]] Vec2 position(double s) const;
    [[nodiscard]] Vec2 derivative(double s) const;
    [[nodiscard]] double speed(double s) const { return norm(derivative(s)); }
    /// Outward unit normal (c2', -c1') / |c'|.
    [[nodiscard]] Vec2 normal(double s) const;

    /// c(s + delta) - c(s) without cancellation for small delta.
    [[nodiscard]] Vec2 chord(double s, double delta) const;

    /// True when p lies strictly inside the curve.
    [[nodiscard]] bool contains(Vec2 p) const;

    /// Largest distance of the curve from the origin, sampled.
    [[nodiscard]] double max_radius() const;

private:
    struct Spectral;

    CurveShape shape_ = CurveShape::Circle;
    double radius_ = 1.0;
    PointFn custom_pos_;
    PointFn custom_der_;
    std::shared_ptr<const Spectral> spectral_;

    [[nodiscard]] bool radial() const { return shape_ != CurveShape::Custom; }
    [[nodiscard]] double r(double s) const;
    [[nodiscard]] double dr(double s) const;
    [[nodiscard]] double r_diff(double s, double delta) const;
};

/// Uniform-in-parameter partition of a closed curve.
///
/// Patch l covers s in [l H, (l+1) H], H = 2 pi / P, via
/// s_l(t) = l H + (H/2)(t + 1); its Jacobian is (H/2) |c'(s_l(t))|.
struct CurvePatchSet {
    Curve2D curve;
    int P = 0;
    double H = 0.0;

    [[nodiscard]] int size() const { return P; }
    [[nodiscard]] double param(int patch, double t) const;
    [[nodiscard]] Vec2 xi(int patch, double t) const { return curve.position(param(patch, t)); }
    [[nodiscard]] double jacobian(int patch, double t) const;
};

[[nodiscard]] CurvePatchSet partition_curve(const Curve2D& curve, int P);

}  // namespace rpq
