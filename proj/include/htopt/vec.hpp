#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace htopt {

// All iterates, gradients and momentum vectors are plain dense vectors of
// doubles. Dimensions are small (d <= 1e3), so no BLAS.
using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline void require_finite(const Vec& v, const char* what) {
  if (!all_finite(v)) {
    throw std::domain_error(std::string(what) + ": non-finite entry");
  }
}

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

inline double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double euclidean_norm(const Vec& v) {
  require_finite(v, "euclidean_norm");
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline Vec scaled(const Vec& v, double a) {
  Vec out(v);
  for (double& x : out) x *= a;
  return out;
}

inline Vec add(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "add");
  Vec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "sub");
  Vec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

// out += a * v
inline void axpy(Vec& out, double a, const Vec& v) {
  require_same_dim(out, v, "axpy");
  for (std::size_t i = 0; i < v.size(); ++i) out[i] += a * v[i];
}

// Dense row-major d x d matrix. Only square matrices appear in this
// project (Hessians and Hessian noise).
class Mat {
 public:
  explicit Mat(std::size_t d) : d_(d), a_(d * d, 0.0) {
    if (d < 1) throw std::invalid_argument("Mat: dimension must be >= 1");
  }

  static Mat identity(std::size_t d) {
    Mat m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return d_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

  Vec matvec(const Vec& v) const {
    if (v.size() != d_) throw std::invalid_argument("matvec: dimension mismatch");
    Vec out(d_, 0.0);
    for (std::size_t i = 0; i < d_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d_; ++j) s += a_[i * d_ + j] * v[j];
      out[i] = s;
    }
    return out;
  }

  // (A + A^T) / 2, symmetric to exact equality.
  Mat symmetrized() const {
    Mat out(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
        out(i, j) = v;
        out(j, i) = v;
      }
    }
    return out;
  }

  Mat& operator+=(const Mat& o) {
    if (o.d_ != d_) throw std::invalid_argument("Mat+=: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }

  // Largest singular value via power iteration on A^T A; used as a test
  // oracle for operator norms of symmetric noise matrices.
  double operator_norm(int iters = 200) const;

 private:
  std::size_t d_;
  std::vector<double> a_;
};

inline Vec matvec(const Mat& a, const Vec& v) { return a.matvec(v); }

}  // namespace htopt
