#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "schoenberg/distance_geometry.hpp"
#include "schoenberg/errors.hpp"

namespace schoenberg {

/// A finite value or positive infinity, tagged explicitly rather than
/// through a sentinel double.
class Limit {
public:
    static Limit finite(double v) { return Limit(true, v); }
    static Limit infinite() { return Limit(false, 0.0); }

    bool is_finite() const { return finite_; }

    double value() const {
        if (!finite_) throw std::logic_error("Limit::value() called on an infinite limit");
        return value_;
    }

    /// +inf when infinite; convenient for printing.
    double as_double() const {
        return finite_ ? value_ : std::numeric_limits<double>::infinity();
    }

private:
    Limit(bool finite, double value) : finite_(finite), value_(value) {}
    bool finite_;
    double value_;
};

/// Boundary behavior of a transformation: rectifiable iff phi'(0) is finite
/// (transformed curves keep finite local arc length), bounded iff
/// phi(infinity) is finite (transformed distances saturate).
struct TransformClassification {
    bool rectifiable;
    bool bounded;
    Limit phi_prime_at_zero;
    Limit phi_at_infinity;
};

/// A member of the catalog of valid transformations of squared Euclidean
/// distances: phi(0) = 0 with completely monotone derivative. Every member
/// carries closed-form value and first two derivatives; the catalog is
/// closed under composition.
class SchoenbergTransform {
public:
    enum class Kind {
        identity,        ///< phi(D) = D
        gaussian,        ///< phi(D) = 1 - exp(-a D),             a > 0
        power,           ///< phi(D) = D^a,                       0 < a <= 1
        log,             ///< phi(D) = ln(1 + a D),               a > 0
        rational,        ///< phi(D) = D / (a (a + D)),           a > 0
        truncated_sine,  ///< phi(D) = D (D + exp(-pi D/2)) / (1 + D^2)
        power_rational,  ///< phi(D) = D^a / (1 + D^a),           0 < a < 1
        scaled_exp,      ///< phi(D) = (1 - exp(-a D)) / a,       a >= 0 (a = 0 gives D)
        composition,     ///< phi = outer . inner
    };

    static SchoenbergTransform identity() { return SchoenbergTransform(Kind::identity, 0.0); }

    static SchoenbergTransform gaussian(double a) {
        require(a > 0.0, "gaussian transform needs a > 0");
        return SchoenbergTransform(Kind::gaussian, a);
    }

    static SchoenbergTransform power(double a) {
        require(a > 0.0 && a <= 1.0, "power transform needs 0 < a <= 1");
        return SchoenbergTransform(Kind::power, a);
    }

    static SchoenbergTransform log(double a) {
        require(a > 0.0, "log transform needs a > 0");
        return SchoenbergTransform(Kind::log, a);
    }

    static SchoenbergTransform rational(double a) {
        require(a > 0.0, "rational transform needs a > 0");
        return SchoenbergTransform(Kind::rational, a);
    }

    static SchoenbergTransform truncated_sine() {
        return SchoenbergTransform(Kind::truncated_sine, 0.0);
    }

    static SchoenbergTransform power_rational(double a) {
        require(a > 0.0 && a < 1.0, "power-rational transform needs 0 < a < 1");
        return SchoenbergTransform(Kind::power_rational, a);
    }

    static SchoenbergTransform scaled_exp(double a) {
        require(a >= 0.0, "scaled-exp transform needs a >= 0");
        return SchoenbergTransform(Kind::scaled_exp, a);
    }

    static SchoenbergTransform composed(SchoenbergTransform outer, SchoenbergTransform inner) {
        SchoenbergTransform t(Kind::composition, 0.0);
        t.outer_ = std::make_shared<SchoenbergTransform>(std::move(outer));
        t.inner_ = std::make_shared<SchoenbergTransform>(std::move(inner));
        return t;
    }

    Kind kind() const { return kind_; }
    double parameter() const { return a_; }
    const SchoenbergTransform& outer() const { return *outer_; }
    const SchoenbergTransform& inner() const { return *inner_; }

    /// phi(d) for d >= 0. phi(0) is exactly 0 for every kind.
    double value(double d) const {
        require_nonnegative(d);
        switch (kind_) {
            case Kind::identity: return d;
            case Kind::gaussian: return -std::expm1(-a_ * d);
            case Kind::power: return std::pow(d, a_);
            case Kind::log: return std::log1p(a_ * d);
            case Kind::rational: return d / (a_ * (a_ + d));
            case Kind::truncated_sine: {
                const double c = std::numbers::pi / 2.0;
                return d * (d + std::exp(-c * d)) / (1.0 + d * d);
            }
            case Kind::power_rational: {
                const double t = std::pow(d, a_);
                return t / (1.0 + t);
            }
            case Kind::scaled_exp:
                return a_ == 0.0 ? d : -std::expm1(-a_ * d) / a_;
            case Kind::composition: return outer_->value(inner_->value(d));
        }
        return 0.0;  // unreachable
    }

    /// phi'(d) >= 0. Returns +inf at d = 0 for non-rectifiable kinds.
    double derivative(double d) const {
        require_nonnegative(d);
        switch (kind_) {
            case Kind::identity: return 1.0;
            case Kind::gaussian: return a_ * std::exp(-a_ * d);
            case Kind::power:
                if (a_ == 1.0) return 1.0;
                return a_ * std::pow(d, a_ - 1.0);  // +inf at d = 0
            case Kind::log: return a_ / (1.0 + a_ * d);
            case Kind::rational: {
                const double s = a_ + d;
                return 1.0 / (s * s);
            }
            case Kind::truncated_sine: {
                const double c = std::numbers::pi / 2.0;
                const double ex = std::exp(-c * d);
                const double num = 2.0 * d + ex * (1.0 - c * d);   // N'
                const double mden = 1.0 + d * d;                   // M
                const double n = d * (d + ex);                     // N
                return (num * mden - n * 2.0 * d) / (mden * mden);
            }
            case Kind::power_rational: {
                const double t = std::pow(d, a_);
                const double u = 1.0 + t;
                return a_ * std::pow(d, a_ - 1.0) / (u * u);  // +inf at d = 0
            }
            case Kind::scaled_exp: return a_ == 0.0 ? 1.0 : std::exp(-a_ * d);
            case Kind::composition: {
                const double outer_d = outer_->derivative(inner_->value(d));
                const double inner_d = inner_->derivative(d);
                if (outer_d == 0.0 || inner_d == 0.0) return 0.0;
                return outer_d * inner_d;
            }
        }
        return 0.0;
    }

    /// phi''(d) <= 0. Returns -inf at d = 0 for non-rectifiable kinds.
    double second_derivative(double d) const {
        require_nonnegative(d);
        switch (kind_) {
            case Kind::identity: return 0.0;
            case Kind::gaussian: return -a_ * a_ * std::exp(-a_ * d);
            case Kind::power:
                if (a_ == 1.0) return 0.0;
                return a_ * (a_ - 1.0) * std::pow(d, a_ - 2.0);  // -inf at d = 0
            case Kind::log: {
                const double s = 1.0 + a_ * d;
                return -a_ * a_ / (s * s);
            }
            case Kind::rational: {
                const double s = a_ + d;
                return -2.0 / (s * s * s);
            }
            case Kind::truncated_sine: {
                const double c = std::numbers::pi / 2.0;
                const double ex = std::exp(-c * d);
                const double n = d * (d + ex);
                const double np = 2.0 * d + ex * (1.0 - c * d);
                const double npp = 2.0 - c * ex * (2.0 - c * d);
                const double m = 1.0 + d * d;
                const double mp = 2.0 * d;
                return ((npp * m - n * 2.0) * m - 2.0 * mp * (np * m - n * mp)) / (m * m * m);
            }
            case Kind::power_rational: {
                const double t = std::pow(d, a_);
                const double u = 1.0 + t;
                return a_ * std::pow(d, a_ - 2.0) * ((a_ - 1.0) - (a_ + 1.0) * t) / (u * u * u);
            }
            case Kind::scaled_exp: return a_ == 0.0 ? 0.0 : -a_ * std::exp(-a_ * d);
            case Kind::composition: {
                const double gi = inner_->value(d);
                const double o1 = outer_->derivative(gi);
                const double o2 = outer_->second_derivative(gi);
                const double i1 = inner_->derivative(d);
                const double i2 = inner_->second_derivative(d);
                const double term1 = (o2 == 0.0 || i1 == 0.0) ? 0.0 : o2 * i1 * i1;
                const double term2 = (o1 == 0.0 || i2 == 0.0) ? 0.0 : o1 * i2;
                return term1 + term2;
            }
        }
        return 0.0;
    }

    /// Rectifiability and boundedness flags with the underlying limits.
    TransformClassification classify() const {
        const Limit prime = phi_prime_at_zero();
        const Limit at_inf = phi_at_infinity();
        return {prime.is_finite(), at_inf.is_finite(), prime, at_inf};
    }

    /// Canonical spec string, e.g. "gaussian:a=0.65" or
    /// "compose(rational:a=1,power:a=0.5)".
    std::string spec_string() const {
        switch (kind_) {
            case Kind::identity: return "identity";
            case Kind::gaussian: return "gaussian:a=" + format_parameter();
            case Kind::power: return "power:a=" + format_parameter();
            case Kind::log: return "log:a=" + format_parameter();
            case Kind::rational: return "rational:a=" + format_parameter();
            case Kind::truncated_sine: return "truncsine";
            case Kind::power_rational: return "powrational:a=" + format_parameter();
            case Kind::scaled_exp: return "scaledexp:a=" + format_parameter();
            case Kind::composition:
                return "compose(" + outer_->spec_string() + "," + inner_->spec_string() + ")";
        }
        return "";
    }

private:
    SchoenbergTransform(Kind kind, double a) : kind_(kind), a_(a) {}

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    static void require_nonnegative(double d) {
        if (d < 0.0)
            throw std::invalid_argument("transform argument must be nonnegative, got " +
                                        std::to_string(d));
    }

    Limit phi_prime_at_zero() const {
        const double v = derivative(0.0);
        return std::isinf(v) ? Limit::infinite() : Limit::finite(v);
    }

    Limit phi_at_infinity() const {
        switch (kind_) {
            case Kind::identity:
            case Kind::power:
            case Kind::log: return Limit::infinite();
            case Kind::gaussian: return Limit::finite(1.0);
            case Kind::rational: return Limit::finite(1.0 / a_);
            case Kind::truncated_sine: return Limit::finite(1.0);
            case Kind::power_rational: return Limit::finite(1.0);
            case Kind::scaled_exp:
                return a_ == 0.0 ? Limit::infinite() : Limit::finite(1.0 / a_);
            case Kind::composition: {
                const Limit inner_inf = inner_->phi_at_infinity();
                if (inner_inf.is_finite())
                    return Limit::finite(outer_->value(inner_inf.value()));
                return outer_->phi_at_infinity();
            }
        }
        return Limit::infinite();
    }

    std::string format_parameter() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", a_);
        return buf;
    }

    Kind kind_;
    double a_;
    std::shared_ptr<const SchoenbergTransform> outer_;
    std::shared_ptr<const SchoenbergTransform> inner_;
};

inline SchoenbergTransform compose(SchoenbergTransform outer, SchoenbergTransform inner) {
    return SchoenbergTransform::composed(std::move(outer), std::move(inner));
}

/// Elementwise transformation of a squared distance matrix. The result is a
/// squared Euclidean distance matrix again (symmetric, zero diagonal,
/// nonnegative by construction; conditional negative definiteness is the
/// fundamental closure property of the catalog).
inline SquaredDistanceMatrix apply(const SchoenbergTransform& t,
                                   const SquaredDistanceMatrix& d) {
    const std::size_t n = d.order();
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, t.value(d(i, j)));
    return make_squared_distance_matrix_unchecked(std::move(out));
}

/// Image of a right angle whose legs have squared lengths d1, d2 > 0:
/// cos = (phi(d1) + phi(d2) - phi(d1 + d2)) / (2 sqrt(phi(d1) phi(d2))).
/// Subadditivity keeps the cosine nonnegative, so the image is acute or
/// right but never obtuse.
inline double transformed_right_angle(const SchoenbergTransform& t, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0)
        throw std::invalid_argument("transformed right angle: leg lengths must be positive");
    const double p1 = t.value(d1);
    const double p2 = t.value(d2);
    if (p1 <= 0.0 || p2 <= 0.0)
        throw Error("transformed right angle undefined: transform collapses a leg to length 0");
    double c = (p1 + p2 - t.value(d1 + d2)) / (2.0 * std::sqrt(p1 * p2));
    c = std::clamp(c, 0.0, 1.0);  // subadditivity up to round-off
    return std::acos(c);
}

/// Curvature acquired by straight lines under the transformation:
/// kappa = sqrt(-6 phi''(0)) / phi'(0). Defined for rectifiable
/// transformations only.
inline double curvature(const SchoenbergTransform& t) {
    const double d1 = t.derivative(0.0);
    if (std::isinf(d1))
        throw Error("curvature undefined for non-rectifiable transformation '" +
                    t.spec_string() + "': derivative at zero diverges");
    const double d2 = t.second_derivative(0.0);
    return std::sqrt(-6.0 * d2) / d1;
}

/// Parses the CLI transform grammar:
///   identity | truncsine | <name>:a=<value> | compose(<spec>,<spec>)
/// with names gaussian, power, log, rational, powrational, scaledexp.
inline SchoenbergTransform parse_transform(const std::string& spec) {
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;

        void skip_spaces() {
            while (pos < s.size() && s[pos] == ' ') ++pos;
        }

        std::string token() {
            skip_spaces();
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) != 0))
                ++pos;
            return s.substr(start, pos - start);
        }

        double parameter(const std::string& name) {
            skip_spaces();
            if (pos >= s.size() || s[pos] != ':')
                throw ParseError("transform '" + name + "' needs a parameter, e.g. '" + name +
                                 ":a=1'");
            ++pos;
            skip_spaces();
            if (s.compare(pos, 2, "a=") != 0)
                throw ParseError("expected 'a=<value>' after '" + name + ":', got '" +
                                 s.substr(pos) + "'");
            pos += 2;
            skip_spaces();
            std::size_t consumed = 0;
            double v = 0.0;
            try {
                v = std::stod(s.substr(pos), &consumed);
            } catch (const std::exception&) {
                throw ParseError("invalid parameter value '" + s.substr(pos) + "' for '" +
                                 name + "'");
            }
            pos += consumed;
            return v;
        }

        SchoenbergTransform parse() {
            const std::string name = token();
            if (name.empty())
                throw ParseError("empty transform spec at '" + s.substr(pos) + "'");
            try {
                if (name == "identity") return SchoenbergTransform::identity();
                if (name == "truncsine") return SchoenbergTransform::truncated_sine();
                if (name == "gaussian") return SchoenbergTransform::gaussian(parameter(name));
                if (name == "power") return SchoenbergTransform::power(parameter(name));
                if (name == "log") return SchoenbergTransform::log(parameter(name));
                if (name == "rational") return SchoenbergTransform::rational(parameter(name));
                if (name == "powrational")
                    return SchoenbergTransform::power_rational(parameter(name));
                if (name == "scaledexp") return SchoenbergTransform::scaled_exp(parameter(name));
                if (name == "compose") {
                    expect('(', "compose");
                    SchoenbergTransform outer = parse();
                    expect(',', "compose");
                    SchoenbergTransform inner = parse();
                    expect(')', "compose");
                    return compose(std::move(outer), std::move(inner));
                }
            } catch (const std::invalid_argument& err) {
                throw ParseError(std::string(err.what()) + " in '" + s + "'");
            }
            throw ParseError("unknown transform '" + name + "'");
        }

        void expect(char c, const char* where) {
            skip_spaces();
            if (pos >= s.size() || s[pos] != c)
                throw ParseError(std::string("expected '") + c + "' in " + where + " at '" +
                                 s.substr(pos) + "'");
            ++pos;
        }
    };

    Parser p{spec};
    SchoenbergTransform t = p.parse();
    p.skip_spaces();
    if (p.pos != spec.size())
        throw ParseError("trailing characters '" + spec.substr(p.pos) + "' in transform spec");
    return t;
}

}  // namespace schoenberg
