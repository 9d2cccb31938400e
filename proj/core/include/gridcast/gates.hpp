#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace gridcast {

// Three-letter coupling alphabet. The same storage serves both alphabets:
// {0, 1, u} for NAND/XOR/IMP and {0c, 1c, 1u} for AND (Zero ~ 0c, One ~ 1c,
// U ~ 1u). Numeric values 0/1/2 are the ternary digits of the index map and
// must not be reordered.
enum class Letter : std::uint8_t { Zero = 0, One = 1, U = 2 };

constexpr int letter_digit(Letter l) { return static_cast<int>(l); }
constexpr Letter digit_letter(int d) { return static_cast<Letter>(d); }

enum class GateKind { And, Nand, Xor, Imp };

// A two-input gate together with its coupled three-letter table. The coupled
// table restricted to {0,1} x {0,1} always agrees with the marginal table, and
// it never produces U from two non-U inputs.
class GateRule {
public:
  static const GateRule& get(GateKind kind);

  GateKind kind() const { return kind_; }
  const char* name() const { return name_; }

  // Coupled truth table over the active three-letter alphabet.
  Letter coupled(Letter a, Letter b) const {
    return coupled_[letter_digit(a) * 3 + letter_digit(b)];
  }

  // Plain {0,1} gate.
  int marginal(int a, int b) const { return marginal_[a * 2 + b]; }

  // Display label for a letter in this rule's alphabet ("u" vs "1u", ...).
  const char* letter_name(Letter l) const { return letter_names_[letter_digit(l)]; }

  // Root letter of the coupled chain: the mark meaning "the two marginal
  // runs disagree here" (u, or 1u for AND).
  Letter root_letter() const { return Letter::U; }

private:
  GateKind kind_;
  const char* name_;
  std::array<Letter, 9> coupled_;
  std::array<int, 4> marginal_;
  std::array<const char*, 3> letter_names_;

  GateRule(GateKind kind, const char* name, std::array<Letter, 9> coupled,
           std::array<int, 4> marginal, std::array<const char*, 3> letter_names)
      : kind_(kind), name_(name), coupled_(coupled), marginal_(marginal),
        letter_names_(letter_names) {}
};

// Lookup by CLI-style name ("nand", "and", "xor", "imp"); throws
// std::invalid_argument on anything else.
const GateRule& rule_by_name(const std::string& name);

inline Letter gate_eval(const GateRule& rule, Letter y1, Letter y2) {
  return rule.coupled(y1, y2);
}

}  // namespace gridcast
