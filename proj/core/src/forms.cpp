#include "gridcast/forms.hpp"

#include <stdexcept>

#include "json_util.hpp"

namespace gridcast {

namespace {

size_t pow3(int n) {
  size_t p = 1;
  while (n-- > 0) p *= 3;
  return p;
}

// Max pattern length for clause enumeration / extension (3^cap blows up past
// this; nothing in the pipeline needs longer clauses).
constexpr int RANK_CAP = 14;

}  // namespace

void validate_letter_string(const LetterString& s) {
  if (s.empty()) throw std::invalid_argument("empty letter string");
  for (char c : s) {
    if (!is_letter_char(c)) {
      throw std::invalid_argument("letter string must be over {0,1,u}, got '" + s + "'");
    }
  }
}

std::size_t clause_index(const LetterString& pattern) {
  std::size_t idx = 0;
  for (char c : pattern) idx = idx * 3 + static_cast<std::size_t>(letter_char_digit(c));
  return idx;
}

LetterString index_to_clause(std::size_t index, int rank) {
  LetterString s(static_cast<size_t>(rank), '0');
  for (int i = rank - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digit_letter_char(static_cast<int>(index % 3));
    index /= 3;
  }
  return s;
}

void CountingForm::add(const LetterString& pattern, const Rational& coeff) {
  validate_letter_string(pattern);
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(pattern, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

const Rational* CountingForm::find(const LetterString& pattern) const {
  auto it = terms_.find(pattern);
  return it == terms_.end() ? nullptr : &it->second;
}

int CountingForm::rank() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
}

bool CountingForm::pure_rank() const {
  return terms_.empty() || terms_.begin()->first.size() == terms_.rbegin()->first.size();
}

bool CountingForm::u_only() const {
  for (const auto& [v, c] : terms_) {
    if (v.find('u') == LetterString::npos) return false;
  }
  return true;
}

CountingForm& CountingForm::operator+=(const CountingForm& o) {
  for (const auto& [v, c] : o.terms_) add(v, c);
  return *this;
}

CountingForm& CountingForm::operator-=(const CountingForm& o) {
  for (const auto& [v, c] : o.terms_) add(v, -c);
  return *this;
}

CountingForm& CountingForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [v, coeff] : terms_) coeff *= c;
  }
  return *this;
}

CountingForm CountingForm::operator-() const {
  CountingForm out = *this;
  for (auto& [v, coeff] : out.terms_) coeff = -coeff;
  return out;
}

Rational eval_acyclic(const CountingForm& w, const LetterString& y) {
  validate_letter_string(y);
  Rational total = 0;
  for (const auto& [v, coeff] : w.terms()) {
    if (v.size() > y.size()) continue;
    long count = 0;
    for (size_t i = 0; i + v.size() <= y.size(); ++i) {
      if (y.compare(i, v.size(), v) == 0) ++count;
    }
    if (count != 0) total += coeff * count;
  }
  return total;
}

Rational eval_cyclic(const CountingForm& w, const LetterString& y) {
  validate_letter_string(y);
  const size_t n = y.size();
  Rational total = 0;
  for (const auto& [v, coeff] : w.terms()) {
    if (v.size() > n) continue;
    long count = 0;
    for (size_t i = 0; i < n; ++i) {
      bool match = true;
      for (size_t t = 0; t < v.size(); ++t) {
        if (y[(i + t) % n] != v[t]) { match = false; break; }
      }
      if (match) ++count;
    }
    if (count != 0) total += coeff * count;
  }
  return total;
}

CountingForm extend_to_rank(const CountingForm& w, int t, Side side) {
  if (t < w.rank()) {
    throw std::invalid_argument("target rank below the form's rank");
  }
  if (t > RANK_CAP) throw resource_limit_error("extension rank exceeds cap 14");
  CountingForm out;
  for (const auto& [v, coeff] : w.terms()) {
    const int ext = t - static_cast<int>(v.size());
    const size_t n = pow3(ext);
    for (size_t e = 0; e < n; ++e) {
      LetterString tail = ext == 0 ? LetterString{} : index_to_clause(e, ext);
      out.add(side == Side::Right ? v + tail : tail + v, coeff);
    }
  }
  return out;
}

CountingForm purify(const CountingForm& w, int t, Side side) {
  if (!w.u_only()) {
    throw std::invalid_argument("purify requires a u-only form");
  }
  return extend_to_rank(w, t, side);
}

namespace {

// kernel[a][b][g]: probability that a child with noisy parent letters drawn
// from (a, b) shows coupled letter g. The W matrix keeps a definite letter
// w.p. 1-delta and never invents U; from U it resolves each way w.p. delta.
struct CoupledKernel {
  Rational k[3][3][3];
};

CoupledKernel make_kernel(const GateRule& rule, const Rational& delta) {
  Rational W[3][3] = {};
  W[0][0] = 1 - delta; W[0][1] = delta;     W[0][2] = 0;
  W[1][0] = delta;     W[1][1] = 1 - delta; W[1][2] = 0;
  W[2][0] = delta;     W[2][1] = delta;     W[2][2] = 1 - 2 * delta;

  CoupledKernel kk;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      for (int g = 0; g < 3; ++g) kk.k[a][b][g] = 0;
      for (int ap = 0; ap < 3; ++ap)
        for (int bp = 0; bp < 3; ++bp) {
          if (W[a][ap] == 0 || W[b][bp] == 0) continue;
          int g = letter_digit(rule.coupled(digit_letter(ap), digit_letter(bp)));
          kk.k[a][b][g] += W[a][ap] * W[b][bp];
        }
    }
  return kk;
}

Rational window_prob(const LetterString& v, const LetterString& z,
                     const CoupledKernel& kk) {
  Rational p = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    const Rational& f = kk.k[letter_char_digit(z[i])][letter_char_digit(z[i + 1])]
                            [letter_char_digit(v[i])];
    if (f == 0) return Rational(0);
    p *= f;
  }
  return p;
}

void check_delta_rational(const Rational& delta) {
  if (delta < 0 || delta * 2 > 1) {
    throw std::invalid_argument("delta out of range [0, 1/2]");
  }
}

}  // namespace

Rational transition_prob(const LetterString& v, const LetterString& z,
                         const GateRule& rule, const Rational& delta) {
  validate_letter_string(v);
  validate_letter_string(z);
  if (z.size() != v.size() + 1) {
    throw std::invalid_argument("window must be one letter longer than the output");
  }
  check_delta_rational(delta);
  return window_prob(v, z, make_kernel(rule, delta));
}

CountingForm cond_expectation(const CountingForm& w, const GateRule& rule,
                              const Rational& delta) {
  check_delta_rational(delta);
  const CoupledKernel kk = make_kernel(rule, delta);
  CountingForm out;
  for (const auto& [v, coeff] : w.terms()) {
    const int s = static_cast<int>(v.size());
    const size_t n = pow3(s + 1);
    for (size_t zi = 0; zi < n; ++zi) {
      LetterString z = index_to_clause(zi, s + 1);
      Rational p = window_prob(v, z, kk);
      if (p != 0) out.add(z, coeff * p);
    }
  }
  return out;
}

CountingForm harmonic_form() {
  CountingForm w;
  w.add("u", 2);
  w.add("u1", 1);
  w.add("1u", 1);
  w.add("u10", 1);
  w.add("01u", 1);
  w.add("0u0", -2);
  return w;
}

CountingForm rho(const LetterString& v) {
  validate_letter_string(v);
  CountingForm out;
  for (char z : {'0', '1', 'u'}) {
    out.add(v + z, 1);
    out.add(z + v, -1);
  }
  return out;
}

CoeffVector to_coeff_vector(const CountingForm& w) {
  if (!w.pure_rank()) {
    throw std::invalid_argument("coefficient vectors require a pure-rank form");
  }
  CoeffVector x;
  x.rank = w.rank();
  x.entries.assign(pow3(x.rank), Rational(0));
  for (const auto& [v, coeff] : w.terms()) x.entries[clause_index(v)] = coeff;
  return x;
}

CoeffVector zero_coeff_vector(int rank) {
  CoeffVector x;
  x.rank = rank;
  x.entries.assign(pow3(rank), Rational(0));
  return x;
}

CountingForm from_coeff_vector(const CoeffVector& x) {
  if (x.entries.size() != pow3(x.rank)) {
    throw std::invalid_argument("coefficient vector has wrong length for its rank");
  }
  CountingForm w;
  for (size_t i = 0; i < x.entries.size(); ++i) {
    if (x.entries[i] != 0) w.add(index_to_clause(i, x.rank), x.entries[i]);
  }
  return w;
}

std::string form_to_json(const CountingForm& w) {
  jsonutil::json terms = jsonutil::json::array();
  for (const auto& [v, coeff] : w.terms()) {
    jsonutil::json t = jsonutil::rational_to_json(coeff);
    t["pattern"] = v;
    terms.push_back(std::move(t));
  }
  jsonutil::json j;
  j["rank"] = w.rank();
  j["terms"] = std::move(terms);
  return j.dump(2);
}

CountingForm form_from_json(const std::string& text) {
  jsonutil::json j;
  try {
    j = jsonutil::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("form JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    throw std::invalid_argument("form JSON must be an object with a 'terms' array");
  }
  CountingForm w;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("pattern")) {
      throw std::invalid_argument("form term must be an object with 'pattern'");
    }
    w.add(t.at("pattern").get<std::string>(), jsonutil::rational_from_json(t));
  }
  if (j.contains("rank")) {
    const int declared = j.at("rank").get<int>();
    if (declared != w.rank()) {
      throw std::invalid_argument("form JSON rank does not match its terms");
    }
  }
  return w;
}

}  // namespace gridcast
