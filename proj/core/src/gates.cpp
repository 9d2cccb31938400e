#include "gridcast/gates.hpp"

#include <stdexcept>

namespace gridcast {

namespace {

constexpr Letter Z = Letter::Zero;
constexpr Letter O = Letter::One;
constexpr Letter U = Letter::U;

// Row index = first input, column = second input, order (Zero, One, U).
// Each table is the unique map consistent with the marginal gate under the
// "u = the two runs disagree at this position" unfolding: the output is the
// common gate value when every admissible unfolding agrees, else U.

// NAND: (0,*) -> 1, (1,1) -> 0, any U against {1,U} stays undecided.
constexpr std::array<Letter, 9> NAND_TABLE = {
    /*0x*/ O, O, O,
    /*1x*/ O, Z, U,
    /*ux*/ O, U, U,
};

// AND in the {0c,1u,1c} alphabet (storage Zero=0c, One=1c, U=1u):
// (0c,*) -> 0c, (1c,1c) -> 1c, any 1u against {1c,1u} stays 1u.
constexpr std::array<Letter, 9> AND_TABLE = {
    /*0c x*/ Z, Z, Z,
    /*1c x*/ Z, O, U,
    /*1u x*/ Z, U, U,
};

// XOR: any U makes the parity undecided.
constexpr std::array<Letter, 9> XOR_TABLE = {
    /*0x*/ Z, O, U,
    /*1x*/ O, Z, U,
    /*ux*/ U, U, U,
};

// IMP(a,b) = a => b. Asymmetric: (0,*) -> 1 and (*,1) -> 1 decide regardless
// of the other input's unfolding; (U,U) is genuinely undecided because the
// two positions disagree independently across the two runs.
constexpr std::array<Letter, 9> IMP_TABLE = {
    /*0x*/ O, O, O,
    /*1x*/ Z, O, U,
    /*ux*/ U, O, U,
};

}  // namespace

const GateRule& GateRule::get(GateKind kind) {
  static const GateRule nand_rule(GateKind::Nand, "nand", NAND_TABLE,
                                  {1, 1, 1, 0}, {"0", "1", "u"});
  static const GateRule and_rule(GateKind::And, "and", AND_TABLE,
                                 {0, 0, 0, 1}, {"0c", "1c", "1u"});
  static const GateRule xor_rule(GateKind::Xor, "xor", XOR_TABLE,
                                 {0, 1, 1, 0}, {"0", "1", "u"});
  static const GateRule imp_rule(GateKind::Imp, "imp", IMP_TABLE,
                                 {1, 1, 0, 1}, {"0", "1", "u"});
  switch (kind) {
    case GateKind::And: return and_rule;
    case GateKind::Nand: return nand_rule;
    case GateKind::Xor: return xor_rule;
    case GateKind::Imp: return imp_rule;
  }
  throw std::invalid_argument("unknown gate kind");
}

const GateRule& rule_by_name(const std::string& name) {
  if (name == "and") return GateRule::get(GateKind::And);
  if (name == "nand") return GateRule::get(GateKind::Nand);
  if (name == "xor") return GateRule::get(GateKind::Xor);
  if (name == "imp") return GateRule::get(GateKind::Imp);
  throw std::invalid_argument("unknown rule '" + name + "' (want and|nand|xor|imp)");
}

}  // namespace gridcast
