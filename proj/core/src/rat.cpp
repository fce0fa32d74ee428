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

#include "kih/rat.hpp"

#include <cctype>

namespace kih {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat Rat::from_string(std::string_view s) {
  // Grammar: ["+"|"-"] digits [ "/" digits ].  The denominator carries no
  // sign and must be nonzero.
  std::string_view num = s;
  std::string_view den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits[0] == '+' || num_digits[0] == '-'))
    num_digits.remove_prefix(1);
  if (!is_digits(num_digits))
    throw InputError("Rat::from_string: malformed numerator in \"" + std::string(s) + "\"");
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (!den.empty() || s.find('/') != std::string_view::npos) {
    if (!is_digits(den))
      throw InputError("Rat::from_string: malformed denominator in \"" + std::string(s) + "\"");
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw InputError("Rat::from_string: zero denominator in \"" + std::string(s) + "\"");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(q);
}

Rat Rat::pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rat(p);
  mpq_class q(1, p);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace kih
