#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gridcast/gates.hpp"
#include "gridcast/rational.hpp"

namespace gridcast {

// Patterns and strings share one representation: a string over {'0','1','u'}.
using LetterString = std::string;

inline bool is_letter_char(char c) { return c == '0' || c == '1' || c == 'u'; }
inline int letter_char_digit(char c) { return c == '0' ? 0 : (c == '1' ? 1 : 2); }
inline char digit_letter_char(int d) { return d == 0 ? '0' : (d == 1 ? '1' : 'u'); }

// Throws std::invalid_argument unless s is nonempty and over {0,1,u}.
void validate_letter_string(const LetterString& s);

// Ternary key of a pattern: the last letter is the least significant digit
// (T(0)=0, T(1)=1, T(u)=2). Total order: by length, then by key.
std::size_t clause_index(const LetterString& pattern);
LetterString index_to_clause(std::size_t index, int rank);

struct ClauseLess {
  bool operator()(const LetterString& a, const LetterString& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      int da = letter_char_digit(a[i]), db = letter_char_digit(b[i]);
      if (da != db) return da < db;
    }
    return false;
  }
};

// A finite rational linear combination of basis clauses {v}. The map never
// stores zero coefficients, so equality of maps is equality of forms as
// formal sums (not as functions: use the cyclic-graph tests for that).
class CountingForm {
public:
  CountingForm() = default;

  // coeff == 0 erases; patterns are validated.
  void add(const LetterString& pattern, const Rational& coeff);

  const Rational* find(const LetterString& pattern) const;
  const std::map<LetterString, Rational, ClauseLess>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Max pattern length over nonzero clauses; 0 for the zero form.
  int rank() const;
  // True when every clause has length == rank() (vacuously true when empty).
  bool pure_rank() const;
  // True when every clause contains a 'u' (vacuously true when empty).
  bool u_only() const;

  CountingForm& operator+=(const CountingForm& o);
  CountingForm& operator-=(const CountingForm& o);
  CountingForm& operator*=(const Rational& c);
  friend CountingForm operator+(CountingForm a, const CountingForm& b) { return a += b; }
  friend CountingForm operator-(CountingForm a, const CountingForm& b) { return a -= b; }
  friend CountingForm operator*(const Rational& c, CountingForm w) { return w *= c; }
  CountingForm operator-() const;
  bool operator==(const CountingForm& o) const { return terms_ == o.terms_; }

private:
  std::map<LetterString, Rational, ClauseLess> terms_;
};

// Number of contiguous occurrences of each clause in y, weighted by
// coefficients. Clauses longer than y contribute 0.
Rational eval_acyclic(const CountingForm& w, const LetterString& y);

// Same with window indices taken modulo |y| (every start position counts
// once); clauses longer than y still contribute 0.
Rational eval_cyclic(const CountingForm& w, const LetterString& y);

enum class Side { Right, Left };

// Rewrites w as a pure-rank-t form by appending (Side::Right) or prepending
// (Side::Left) every letter extension to each clause. For u-only w the result
// agrees with w acyclically on strings with u-free ends and cyclically on all
// strings of length >= t. Requires u-only w and t >= rank(w).
CountingForm purify(const CountingForm& w, int t, Side side = Side::Right);

// Purification without the u-only requirement. Single-letter extension
// preserves cyclic evaluation for any form (each cyclic occurrence extends
// uniquely), but acyclic equivalence is NOT guaranteed for non-u-only input;
// callers outside the cyclic tests should use purify().
CountingForm extend_to_rank(const CountingForm& w, int t, Side side = Side::Right);

// P(child letters = v | parent window = z) in the coupled chain: the product
// over positions i of the two-parent kernel from (z_i, z_{i+1}) to v_i.
// Requires |z| == |v| + 1 and rational delta in [0, 1/2].
Rational transition_prob(const LetterString& v, const LetterString& z,
                         const GateRule& rule, const Rational& delta);

// The one-step expectation operator: E(w) = sum over clauses alpha_j * sum_z
// transition_prob(v_j, z) {z}. Raises rank by one; maps u-only to u-only.
CountingForm cond_expectation(const CountingForm& w, const GateRule& rule,
                              const Rational& delta);

// The rank-3 potential 2{u} + {u1} + {1u} + {u10} + {01u} - 2{0u0}: a fixed
// point of E at delta = 0 (up to equivalence on u-free-ended strings).
CountingForm harmonic_form();

// rho_v = sum_z ({v,z} - {z,v}) over z in {0,1,u}; pure rank |v|+1. These
// generate exactly the cyclically-null forms of that rank.
CountingForm rho(const LetterString& v);

// Dense coefficients of a pure-rank form, indexed by clause_index.
struct CoeffVector {
  int rank = 0;
  std::vector<Rational> entries;  // size 3^rank
};

// Requires pure rank (throws std::invalid_argument on mixed ranks).
CoeffVector to_coeff_vector(const CountingForm& w);
CoeffVector zero_coeff_vector(int rank);
CountingForm from_coeff_vector(const CoeffVector& x);

// JSON round-trip: {"rank": s, "terms": [{"pattern": "01u", "num": 1,
// "den": 1}, ...]}, terms in clause-index order.
std::string form_to_json(const CountingForm& w);
CountingForm form_from_json(const std::string& text);

}  // namespace gridcast
