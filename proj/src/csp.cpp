#include "smax/csp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "smax/errors.hpp"

namespace smax {

int CnfFormula::k() const {
  size_t k = 0;
  for (const auto& c : clauses) k = std::max(k, c.size());
  return static_cast<int>(k);
}

void validate(const CnfFormula& f) {
  if (f.n < 0) throw InputError("negative variable count");
  for (const auto& clause : f.clauses) {
    if (clause.empty()) throw InputError("empty clause");
    std::vector<int> vars;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > f.n)
        throw InputError("literal " + std::to_string(lit) + " out of range");
      vars.push_back(std::abs(lit));
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      throw InputError("clause contains a variable twice (or with its negation)");
  }
}

void validate(const CspInstance& inst) {
  if (inst.n < 0 || inst.k < 1) throw InputError("bad CSP dimensions");
  for (const auto& c : inst.constraints) {
    const size_t arity = c.vars.size();
    if (arity < 1 || static_cast<int>(arity) > inst.k)
      throw InputError("constraint arity out of range");
    if (c.table.size() != (size_t{1} << arity))
      throw InputError("truth table length must be 2^arity");
    std::vector<int> sorted = c.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("constraint variables must be distinct");
    if (sorted.front() < 0 || sorted.back() >= inst.n)
      throw InputError("constraint variable out of range");
    if (std::find(c.table.begin(), c.table.end(), uint8_t{1}) == c.table.end())
      throw InputError("unsatisfiable constraint (all-zero truth table)");
  }
}

CspInstance to_csp(const CnfFormula& f) {
  validate(f);
  CspInstance inst;
  inst.n = f.n;
  inst.k = std::max(f.k(), 1);
  inst.constraints.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    CspConstraint c;
    std::vector<bool> negated;
    for (int lit : clause) {
      c.vars.push_back(std::abs(lit) - 1);
      negated.push_back(lit < 0);
    }
    const size_t arity = c.vars.size();
    c.table.assign(size_t{1} << arity, 0);
    for (size_t row = 0; row < c.table.size(); ++row) {
      bool sat = false;
      for (size_t i = 0; i < arity && !sat; ++i) {
        bool value = (row >> i) & 1;
        sat = negated[i] ? !value : value;
      }
      c.table[row] = sat ? 1 : 0;
    }
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

SmoothPolynomial arithmetize(const CspInstance& inst) {
  validate(inst);
  // For each satisfying row, prod_{bit=1} x_v * prod_{bit=0} (1 - x_v) expands
  // over subsets of the zero positions with alternating sign.
  std::map<std::vector<int>, Rational> acc;
  Rational constant;
  for (const auto& c : inst.constraints) {
    const size_t arity = c.vars.size();
    for (size_t row = 0; row < c.table.size(); ++row) {
      if (!c.table[row]) continue;
      std::vector<int> ones, zeros;
      for (size_t i = 0; i < arity; ++i)
        ((row >> i) & 1 ? ones : zeros).push_back(c.vars[i]);
      const size_t zmask_end = size_t{1} << zeros.size();
      for (size_t zmask = 0; zmask < zmask_end; ++zmask) {
        std::vector<int> vars = ones;
        int sign = 1;
        for (size_t i = 0; i < zeros.size(); ++i)
          if ((zmask >> i) & 1) {
            vars.push_back(zeros[i]);
            sign = -sign;
          }
        std::sort(vars.begin(), vars.end());
        if (vars.empty())
          constant += Rational(sign);
        else
          acc[vars] += Rational(sign);
      }
    }
  }
  std::vector<Monomial> monomials;
  monomials.reserve(acc.size());
  for (auto& [vars, coeff] : acc)
    if (!coeff.is_zero()) monomials.push_back({vars, coeff});
  return SmoothPolynomial::make(inst.n, constant, std::move(monomials));
}

SmoothPolynomial arithmetize(const CnfFormula& f) { return arithmetize(to_csp(f)); }

int64_t count_satisfied(const CspInstance& inst, std::span<const uint8_t> x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw InputError("assignment length does not match variable count");
  int64_t count = 0;
  for (const auto& c : inst.constraints) {
    size_t row = 0;
    for (size_t i = 0; i < c.vars.size(); ++i)
      if (x[c.vars[i]]) row |= size_t{1} << i;
    count += c.table[row];
  }
  return count;
}

int64_t count_satisfied(const CnfFormula& f, std::span<const uint8_t> x) {
  if (static_cast<int>(x.size()) != f.n)
    throw InputError("assignment length does not match variable count");
  int64_t count = 0;
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      bool value = x[std::abs(lit) - 1];
      if (lit > 0 ? value : !value) {
        sat = true;
        break;
      }
    }
    count += sat ? 1 : 0;
  }
  return count;
}

CnfFormula parse_dimacs_cnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  CnfFormula f;
  long declared_m = -1;
  bool have_header = false;
  std::vector<int> open_clause;
  auto fail = [&](const std::string& msg) {
    throw InputError("cnf parse error at line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      long n = -1;
      if (!(ls >> kind >> n >> declared_m) || kind != "cnf" || n < 0 || declared_m < 0)
        fail("malformed header, expected 'p cnf n m'");
      f.n = static_cast<int>(n);
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before 'p cnf' header");
    ls.clear();
    ls.seekg(0);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (open_clause.empty()) fail("empty clause");
        f.clauses.push_back(open_clause);
        open_clause.clear();
      } else {
        if (std::abs(lit) > f.n)
          fail("variable " + std::to_string(std::abs(lit)) + " out of range");
        open_clause.push_back(lit);
      }
    }
    if (ls.fail() && !ls.eof()) fail("malformed clause token");
  }
  if (!have_header) throw InputError("cnf parse error: missing 'p cnf' header");
  if (!open_clause.empty()) throw InputError("cnf parse error: unterminated final clause");
  if (declared_m != static_cast<long>(f.clauses.size()))
    throw InputError("cnf parse error: header declares " + std::to_string(declared_m) +
                     " clauses, found " + std::to_string(f.clauses.size()));
  try {
    validate(f);
  } catch (const InputError& e) {
    throw InputError(std::string("cnf parse error: ") + e.what());
  }
  return f;
}

std::string format_dimacs_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.n << ' ' << f.m() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CspInstance parse_csp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  CspInstance inst;
  long declared_m = -1;
  bool have_header = false;
  auto fail = [&](const std::string& msg) {
    throw InputError("csp parse error at line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok == "#") continue;
    if (!have_header) {
      ls.clear();
      ls.seekg(0);
      long k = -1, n = -1;
      if (!(ls >> k >> n >> declared_m) || k < 1 || n < 0 || declared_m < 0)
        fail("malformed header, expected 'k n m'");
      inst.k = static_cast<int>(k);
      inst.n = static_cast<int>(n);
      have_header = true;
      continue;
    }
    ls.clear();
    ls.seekg(0);
    CspConstraint c;
    std::string piece;
    bool seen_colon = false;
    std::string hex;
    while (ls >> piece) {
      if (piece == ":") {
        seen_colon = true;
      } else if (!seen_colon) {
        try {
          int v = std::stoi(piece);
          if (v < 1 || v > inst.n) fail("variable " + piece + " out of range");
          c.vars.push_back(v - 1);
        } catch (const std::exception&) {
          fail("malformed variable token '" + piece + "'");
        }
      } else {
        hex += piece;
      }
    }
    if (!seen_colon || hex.empty()) fail("expected 'vars : truthtable-hex'");
    if (c.vars.empty() || static_cast<int>(c.vars.size()) > inst.k)
      fail("constraint arity out of range");
    const size_t rows = size_t{1} << c.vars.size();
    c.table.assign(rows, 0);
    size_t expected_digits = (rows + 3) / 4;
    if (hex.size() != expected_digits)
      fail("truth table must have exactly " + std::to_string(expected_digits) + " hex digits");
    for (size_t i = 0; i < hex.size(); ++i) {
      char ch = static_cast<char>(std::tolower(hex[hex.size() - 1 - i]));
      int nibble = 0;
      if (ch >= '0' && ch <= '9') nibble = ch - '0';
      else if (ch >= 'a' && ch <= 'f') nibble = ch - 'a' + 10;
      else fail("bad hex digit in truth table");
      for (int b = 0; b < 4; ++b) {
        size_t row = i * 4 + b;
        if (row < rows) c.table[row] = (nibble >> b) & 1;
      }
    }
    inst.constraints.push_back(std::move(c));
  }
  if (!have_header) throw InputError("csp parse error: missing 'k n m' header");
  if (declared_m != static_cast<long>(inst.constraints.size()))
    throw InputError("csp parse error: header declares " + std::to_string(declared_m) +
                     " constraints, found " + std::to_string(inst.constraints.size()));
  try {
    validate(inst);
  } catch (const InputError& e) {
    throw InputError(std::string("csp parse error: ") + e.what());
  }
  return inst;
}

std::string format_csp(const CspInstance& inst) {
  std::ostringstream out;
  out << inst.k << ' ' << inst.n << ' ' << inst.m() << '\n';
  static const char* digits = "0123456789abcdef";
  for (const auto& c : inst.constraints) {
    for (int v : c.vars) out << v + 1 << ' ';
    out << ':';
    const size_t rows = c.table.size();
    const size_t ndigits = (rows + 3) / 4;
    std::string hex(ndigits, '0');
    for (size_t row = 0; row < rows; ++row)
      if (c.table[row]) {
        size_t digit = row / 4;
        int nibble_bit = static_cast<int>(row % 4);
        size_t pos = ndigits - 1 - digit;
        int cur = hex[pos] <= '9' ? hex[pos] - '0' : hex[pos] - 'a' + 10;
        hex[pos] = digits[cur | (1 << nibble_bit)];
      }
    out << ' ' << hex << '\n';
  }
  return out.str();
}

}  // namespace smax
