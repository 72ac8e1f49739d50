#include "cosco/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cosco {

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("FeasibleSet::box: bound size mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i])
            throw std::invalid_argument("FeasibleSet::box: lower > upper");
    FeasibleSet s;
    s.kind_ = Kind::Box;
    s.dim_ = lower.size();
    s.lower_ = std::move(lower);
    s.upper_ = std::move(upper);
    return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
    if (center.empty()) throw std::invalid_argument("FeasibleSet::ball: empty center");
    if (!(radius > 0.0)) throw std::invalid_argument("FeasibleSet::ball: radius must be > 0");
    FeasibleSet s;
    s.kind_ = Kind::Ball;
    s.dim_ = center.size();
    s.center_ = std::move(center);
    s.radius_ = radius;
    return s;
}

FeasibleSet FeasibleSet::simplex(std::size_t dim, double scale) {
    if (dim < 1) throw std::invalid_argument("FeasibleSet::simplex: dim must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("FeasibleSet::simplex: scale must be > 0");
    FeasibleSet s;
    s.kind_ = Kind::Simplex;
    s.dim_ = dim;
    s.scale_ = scale;
    return s;
}

FeasibleSet FeasibleSet::nonneg_box(Vec upper) {
    if (upper.empty()) throw std::invalid_argument("FeasibleSet::nonneg_box: empty upper");
    for (double u : upper)
        if (u < 0.0) throw std::invalid_argument("FeasibleSet::nonneg_box: negative upper");
    FeasibleSet s;
    s.kind_ = Kind::NonnegBox;
    s.dim_ = upper.size();
    s.lower_.assign(upper.size(), 0.0);
    s.upper_ = std::move(upper);
    return s;
}

FeasibleSet FeasibleSet::product(std::vector<FeasibleSet> blocks) {
    if (blocks.empty()) throw std::invalid_argument("FeasibleSet::product: no blocks");
    FeasibleSet s;
    s.kind_ = Kind::Product;
    s.dim_ = 0;
    for (const auto& b : blocks) s.dim_ += b.dim();
    s.blocks_ = std::move(blocks);
    return s;
}

double FeasibleSet::diameter() const {
    switch (kind_) {
        case Kind::Box:
        case Kind::NonnegBox: {
            double s = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                const double d = upper_[i] - lower_[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Kind::Ball:
            return 2.0 * radius_;
        case Kind::Simplex:
            return scale_ * std::sqrt(2.0);
        case Kind::Product: {
            double s = 0.0;
            for (const auto& b : blocks_) {
                const double d = b.diameter();
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

Vec project_simplex(const Vec& v, double scale) {
    if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");
    if (!(scale > 0.0)) throw std::invalid_argument("project_simplex: scale must be > 0");
    Vec u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0;
    double theta = 0.0;
    std::size_t support = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumsum += u[k];
        const double cand = (cumsum - scale) / static_cast<double>(k + 1);
        if (u[k] - cand > 0.0) {  // largest k with positive residual wins
            support = k + 1;
            theta = cand;
        }
    }
    if (support == 0) {  // all mass on the largest coordinate
        theta = (u[0] - scale);
        support = 1;
    }
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
    return out;
}

Vec FeasibleSet::project(const Vec& v) const {
    check_dim(v.size(), dim_, "FeasibleSet::project");
    switch (kind_) {
        case Kind::Box:
        case Kind::NonnegBox: {
            Vec out(dim_);
            for (std::size_t i = 0; i < dim_; ++i)
                out[i] = std::clamp(v[i], lower_[i], upper_[i]);
            return out;
        }
        case Kind::Ball: {
            Vec d(dim_);
            double n = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                d[i] = v[i] - center_[i];
                n += d[i] * d[i];
            }
            n = std::sqrt(n);
            if (n <= radius_) return v;
            Vec out(dim_);
            const double f = radius_ / n;
            for (std::size_t i = 0; i < dim_; ++i) out[i] = center_[i] + f * d[i];
            return out;
        }
        case Kind::Simplex:
            return project_simplex(v, scale_);
        case Kind::Product: {
            Vec out;
            out.reserve(dim_);
            std::size_t off = 0;
            for (const auto& b : blocks_) {
                Vec sub(v.begin() + off, v.begin() + off + b.dim());
                Vec p = b.project(sub);
                out.insert(out.end(), p.begin(), p.end());
                off += b.dim();
            }
            return out;
        }
    }
    return v;
}

bool FeasibleSet::contains(const Vec& v, double tol) const {
    check_dim(v.size(), dim_, "FeasibleSet::contains");
    switch (kind_) {
        case Kind::Box:
        case Kind::NonnegBox: {
            for (std::size_t i = 0; i < dim_; ++i)
                if (v[i] < lower_[i] - tol || v[i] > upper_[i] + tol) return false;
            return true;
        }
        case Kind::Ball: {
            double n = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                const double d = v[i] - center_[i];
                n += d * d;
            }
            return std::sqrt(n) <= radius_ + tol;
        }
        case Kind::Simplex: {
            double s = 0.0;
            for (double x : v) {
                if (x < -tol) return false;
                s += x;
            }
            return std::abs(s - scale_) <= tol;
        }
        case Kind::Product: {
            std::size_t off = 0;
            for (const auto& b : blocks_) {
                Vec sub(v.begin() + off, v.begin() + off + b.dim());
                if (!b.contains(sub, tol)) return false;
                off += b.dim();
            }
            return true;
        }
    }
    return false;
}

Vec FeasibleSet::center() const {
    switch (kind_) {
        case Kind::Box:
        case Kind::NonnegBox: {
            Vec out(dim_);
            for (std::size_t i = 0; i < dim_; ++i) out[i] = 0.5 * (lower_[i] + upper_[i]);
            return out;
        }
        case Kind::Ball:
            return center_;
        case Kind::Simplex:
            return Vec(dim_, scale_ / static_cast<double>(dim_));
        case Kind::Product: {
            Vec out;
            out.reserve(dim_);
            for (const auto& b : blocks_) {
                Vec c = b.center();
                out.insert(out.end(), c.begin(), c.end());
            }
            return out;
        }
    }
    return Vec(dim_, 0.0);
}

Vec clip_nonneg(const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i], 0.0);
    return out;
}

}  // namespace cosco
