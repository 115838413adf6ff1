#include "lmat/polyparse.hpp"

#include <cctype>
#include <stdexcept>

namespace lmat {

namespace {

class TermScanner {
 public:
  TermScanner(const std::string& text, std::size_t num_vars, const VariableResolver& resolve)
      : num_vars_(num_vars), resolve_(resolve) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }
  }

  std::vector<ParsedTerm> run() {
    if (src_.empty()) throw error("empty polynomial");
    std::vector<ParsedTerm> out;
    while (pos_ < src_.size()) out.push_back(term(out.empty()));
    return out;
  }

 private:
  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + " in '" + src_ +
                                 "': " + what);
  }

  bool at(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  ParsedTerm term(bool first) {
    ParsedTerm t{Rat(1), std::vector<unsigned>(num_vars_, 0)};
    if (at('+') || at('-')) {
      if (at('-')) t.coeff = -1;
      ++pos_;
    } else if (!first) {
      throw error("expected '+' or '-'");
    }
    bool have_factor = false;
    while (true) {
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        std::string num = digits();
        Rat value{Int(num)};
        if (at('/')) {
          ++pos_;
          std::string den = digits();
          if (den.empty()) throw error("expected denominator");
          Int d(den);
          if (d == 0) throw error("zero denominator");
          value = Rat(Int(num), d);
          value.canonicalize();
        }
        t.coeff *= value;
      } else if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || at('_'))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          ++pos_;
        }
        std::string name = src_.substr(start, pos_ - start);
        std::size_t var = resolve_(name);
        unsigned power = 1;
        if (at('^')) {
          ++pos_;
          std::string e = digits();
          if (e.empty()) throw error("expected exponent");
          power = static_cast<unsigned>(std::stoul(e));
        }
        t.exponents.at(var) += power;
      } else {
        throw error("expected coefficient or variable");
      }
      have_factor = true;
      if (at('*')) {
        ++pos_;
        continue;
      }
      break;
    }
    if (!have_factor) throw error("empty term");
    return t;
  }

  std::string src_;
  std::size_t pos_ = 0;
  std::size_t num_vars_;
  const VariableResolver& resolve_;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(const std::string& text, std::size_t num_vars,
                                    const VariableResolver& resolve) {
  return TermScanner(text, num_vars, resolve).run();
}

VariableResolver single_variable(std::string name) {
  return [name](const std::string& got) -> std::size_t {
    if (got != name) throw std::invalid_argument("unknown variable '" + got + "' (expected '" + name + "')");
    return 0;
  };
}

VariableResolver indexed_variables(std::string prefix, std::size_t k) {
  return [prefix, k](const std::string& got) -> std::size_t {
    if (got.size() > prefix.size() && got.compare(0, prefix.size(), prefix) == 0) {
      std::string idx = got.substr(prefix.size());
      bool numeric = !idx.empty();
      for (char c : idx) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
      if (numeric) {
        unsigned long i = std::stoul(idx);
        if (i >= 1 && i <= k) return i - 1;
      }
    }
    throw std::invalid_argument("unknown variable '" + got + "' (expected " + prefix + "1.." + prefix +
                                std::to_string(k) + ")");
  };
}

}  // namespace lmat
