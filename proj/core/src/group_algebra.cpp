#include "cag/group_algebra.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

namespace {

void require_algebra(const MarkedGroup& g, const GroupAlgebraElement& a) {
  if (!g.is_finite() || a.coeff.size() != g.order()) {
    throw std::invalid_argument(
        "group algebra element does not match the group");
  }
}

void require_compatible(const GroupAlgebraMatrix& a,
                        const GroupAlgebraMatrix& b) {
  if (a.prime != b.prime || a.size != b.size) {
    throw std::invalid_argument("group algebra matrices are not compatible");
  }
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

GroupAlgebraElement GroupAlgebraElement::zero(int prime,
                                              const MarkedGroup& g) {
  GroupAlgebraElement a;
  a.prime = prime;
  a.coeff.assign(g.order(), 0);
  return a;
}

GroupAlgebraElement GroupAlgebraElement::unit(int prime, const MarkedGroup& g,
                                              std::size_t element) {
  GroupAlgebraElement a = zero(prime, g);
  a.coeff[element] = 1;
  return a;
}

bool GroupAlgebraElement::is_zero() const {
  for (auto c : coeff) {
    if (c != 0) {
      return false;
    }
  }
  return true;
}

GroupAlgebraElement ga_add(const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b) {
  if (a.prime != b.prime || a.coeff.size() != b.coeff.size()) {
    throw std::invalid_argument("group algebra elements are not compatible");
  }
  GroupAlgebraElement out = a;
  for (std::size_t i = 0; i < out.coeff.size(); ++i) {
    out.coeff[i] = static_cast<std::uint8_t>((a.coeff[i] + b.coeff[i]) %
                                             a.prime);
  }
  return out;
}

GroupAlgebraElement ga_mul(const MarkedGroup& g, const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b) {
  require_algebra(g, a);
  require_algebra(g, b);
  if (a.prime != b.prime) {
    throw std::invalid_argument("group algebra elements are not compatible");
  }
  GroupAlgebraElement out = GroupAlgebraElement::zero(a.prime, g);
  for (std::size_t x = 0; x < a.coeff.size(); ++x) {
    if (a.coeff[x] == 0) {
      continue;
    }
    for (std::size_t y = 0; y < b.coeff.size(); ++y) {
      if (b.coeff[y] == 0) {
        continue;
      }
      const std::size_t e = g.mul(x, y);
      out.coeff[e] = static_cast<std::uint8_t>(
          (out.coeff[e] + a.coeff[x] * b.coeff[y]) % a.prime);
    }
  }
  return out;
}

GroupAlgebraMatrix GroupAlgebraMatrix::identity(int prime,
                                                const MarkedGroup& g,
                                                std::size_t size) {
  GroupAlgebraMatrix m;
  m.prime = prime;
  m.size = size;
  m.entries.assign(size * size, GroupAlgebraElement::zero(prime, g));
  for (std::size_t i = 0; i < size; ++i) {
    m.at(i, i) = GroupAlgebraElement::unit(prime, g, 0);
  }
  return m;
}

void GroupAlgebraMatrix::save(std::ostream& out) const {
  out << "prime " << prime << "\n";
  out << "size " << size << "\n";
  for (const auto& entry : entries) {
    bool first = true;
    for (std::size_t e = 0; e < entry.coeff.size(); ++e) {
      if (entry.coeff[e] == 0) {
        continue;
      }
      if (!first) {
        out << ";";
      }
      out << int(entry.coeff[e]) << "*" << e;
      first = false;
    }
    if (first) {
      out << "0";
    }
    out << "\n";
  }
}

GroupAlgebraMatrix GroupAlgebraMatrix::load(std::istream& in,
                                            const MarkedGroup& g) {
  auto expect = [&](const char* token) {
    std::string tok;
    if (!(in >> tok) || tok != token) {
      throw ParseError(std::string("expected '") + token +
                       "' in algebra matrix file");
    }
  };
  auto read_int = [&](const char* what) {
    std::string tok;
    if (!(in >> tok)) {
      throw ParseError(std::string("expected ") + what);
    }
    try {
      return std::stoll(tok);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected number for ") + what);
    }
  };
  expect("prime");
  const int prime = static_cast<int>(read_int("prime"));
  expect("size");
  const std::size_t size = static_cast<std::size_t>(read_int("size"));
  if (size == 0) {
    throw ParseError("matrix size must be positive");
  }
  check_cap(size * size * g.order(), "algebra matrix");

  GroupAlgebraMatrix m;
  m.prime = prime;
  m.size = size;

  std::string line;
  std::getline(in, line);  // rest of size line
  std::size_t parsed = 0;
  while (parsed < size * size && std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    GroupAlgebraElement entry = GroupAlgebraElement::zero(prime, g);
    if (line != "0") {
      std::stringstream ss(line);
      std::string term;
      while (std::getline(ss, term, ';')) {
        term = trim(term);
        const auto star = term.find('*');
        if (star == std::string::npos) {
          throw ParseError("algebra term needs the form coeff*element");
        }
        int coeff;
        std::size_t element;
        try {
          coeff = std::stoi(term.substr(0, star));
          element = static_cast<std::size_t>(std::stoull(term.substr(star + 1)));
        } catch (const std::exception&) {
          throw ParseError("bad algebra term '" + term + "'");
        }
        if (coeff < 0 || coeff >= prime) {
          throw ParseError("algebra coefficient outside the field");
        }
        if (element >= g.order()) {
          throw ParseError("algebra term references an element out of range");
        }
        entry.coeff[element] = static_cast<std::uint8_t>(
            (entry.coeff[element] + coeff) % prime);
      }
    }
    m.entries.push_back(std::move(entry));
    ++parsed;
  }
  if (parsed != size * size) {
    throw ParseError("algebra matrix file ends before size*size entries");
  }
  return m;
}

GroupAlgebraMatrix ga_mat_mul(const MarkedGroup& g,
                              const GroupAlgebraMatrix& a,
                              const GroupAlgebraMatrix& b) {
  require_compatible(a, b);
  GroupAlgebraMatrix out;
  out.prime = a.prime;
  out.size = a.size;
  out.entries.assign(a.size * a.size, GroupAlgebraElement::zero(a.prime, g));
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < a.size; ++j) {
      GroupAlgebraElement acc = GroupAlgebraElement::zero(a.prime, g);
      for (std::size_t k = 0; k < a.size; ++k) {
        acc = ga_add(acc, ga_mul(g, a.at(i, k), b.at(k, j)));
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

bool ga_mat_is_identity(const MarkedGroup& g, const GroupAlgebraMatrix& m) {
  const GroupAlgebraMatrix id = GroupAlgebraMatrix::identity(m.prime, g, m.size);
  return m == id;
}

FpMatrix regular_representation(const MarkedGroup& g,
                                const GroupAlgebraMatrix& m) {
  const std::size_t order = g.order();
  const std::size_t size = m.size * order;
  check_cap(size * size, "regular representation");
  FpMatrix out(m.prime, size, size);
  for (std::size_t i = 0; i < m.size; ++i) {
    for (std::size_t j = 0; j < m.size; ++j) {
      const auto& entry = m.at(i, j);
      require_algebra(g, entry);
      // Left regular representation: block[r][c] = coeff(r c^-1).
      for (std::size_t r = 0; r < order; ++r) {
        for (std::size_t c = 0; c < order; ++c) {
          out.set(i * order + r, j * order + c,
                  entry.coeff[g.mul(r, g.inv(c))]);
        }
      }
    }
  }
  return out;
}

StableFinitenessResult stable_finiteness_witness(const MarkedGroup& g,
                                                 const GroupAlgebraMatrix& m,
                                                 const GroupAlgebraMatrix& l,
                                                 InverseSide side) {
  require_compatible(m, l);
  // Precondition by direct group-algebra arithmetic.
  const GroupAlgebraMatrix one_sided = side == InverseSide::Left
                                           ? ga_mat_mul(g, l, m)
                                           : ga_mat_mul(g, m, l);
  if (!ga_mat_is_identity(g, one_sided)) {
    throw NotOneSidedInverse(side == InverseSide::Left
                                 ? "L*M is not the identity"
                                 : "M*L is not the identity");
  }
  // Two-sidedness through the regular representation.
  const FpMatrix rm = regular_representation(g, m);
  const FpMatrix rl = regular_representation(g, l);
  const FpMatrix opposite =
      side == InverseSide::Left ? rm * rl : rl * rm;
  StableFinitenessResult result;
  result.confirmed = opposite.is_identity();
  result.two_sided_inverse = l;
  return result;
}

}  // namespace cag
