// Copyright 2026 The kih authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KIH_RAT_HPP
#define KIH_RAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "kih/error.hpp"

namespace kih {

/// Exact rational number. The only numeric type on any solver path.
///
/// Invariants: denominator > 0 and gcd(|num|, den) == 1 at all times.
/// GMP keeps results canonical under arithmetic on canonical operands;
/// every constructor canonicalizes explicitly. Values are immutable in
/// spirit: all operators return fresh values, so sharing across threads
/// is safe as long as nobody writes through a shared reference.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(long n, long d) {
    if (d == 0) throw InputError("Rat: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const mpz_class& z) : v_(z) {}

  /// Parses "±int" or "±int/posint". Anything else is an InputError.
  static Rat from_string(std::string_view s);

  /// 2^e for any integer e (negative exponents give dyadic fractions).
  static Rat pow2(long e);

  /// "p/q", with "/q" omitted when q == 1.
  std::string to_string() const;

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw InputError("Rat: division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Dense rational vector with checked dimensions: any length mismatch is
/// an InputError, never a silent truncation.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t n) : v_(n) {}
  RatVec(std::initializer_list<Rat> xs) : v_(xs) {}
  explicit RatVec(std::vector<Rat> xs) : v_(std::move(xs)) {}

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Rat& operator[](std::size_t i) { return v_[i]; }
  const Rat& operator[](std::size_t i) const { return v_[i]; }
  void push_back(Rat r) { v_.push_back(std::move(r)); }

  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  Rat dot(const RatVec& o) const {
    check_same_size(o, "dot");
    Rat s;
    for (std::size_t i = 0; i < size(); ++i) s += v_[i] * o[i];
    return s;
  }

  RatVec& operator+=(const RatVec& o) {
    check_same_size(o, "operator+=");
    for (std::size_t i = 0; i < size(); ++i) v_[i] += o[i];
    return *this;
  }
  friend RatVec operator+(RatVec a, const RatVec& b) { a += b; return a; }
  friend RatVec operator-(const RatVec& a, const RatVec& b) {
    a.check_same_size(b, "operator-");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend RatVec operator*(const Rat& s, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
  }
  friend bool operator==(const RatVec& a, const RatVec& b) { return a.v_ == b.v_; }

 private:
  void check_same_size(const RatVec& o, const char* op) const {
    if (size() != o.size())
      throw InputError(std::string("RatVec ") + op + ": size mismatch (" +
                       std::to_string(size()) + " vs " + std::to_string(o.size()) + ")");
  }
  std::vector<Rat> v_;
};

/// Dense row-major rational matrix with checked access.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) {
    check(i, j);
    return a_[i * cols_ + j];
  }
  const Rat& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return a_[i * cols_ + j];
  }

  RatVec row(std::size_t i) const {
    if (i >= rows_) throw InputError("RatMat::row: index out of range");
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = a_[i * cols_ + j];
    return r;
  }

  RatVec mul(const RatVec& x) const {
    if (x.size() != cols_) throw InputError("RatMat::mul: dimension mismatch");
    RatVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Rat s;
      for (std::size_t j = 0; j < cols_; ++j) s += a_[i * cols_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw InputError("RatMat: index (" + std::to_string(i) + "," + std::to_string(j) +
                       ") out of " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace kih

#endif  // KIH_RAT_HPP
