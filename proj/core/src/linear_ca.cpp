#include "cag/linear_ca.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

namespace {

int modular_inverse(int a, int p) {
  // p is prime and a != 0 mod p.
  int result = 1;
  int base = a % p;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) {
      result = result * base % p;
    }
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

bool is_prime(int p) {
  if (p < 2) {
    return false;
  }
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      return false;
    }
  }
  return true;
}

void check_field(int prime, int dim) {
  if (!is_prime(prime) || prime > 97) {
    throw std::invalid_argument("field must be F_p with p prime, p <= 97");
  }
  if (dim < 1 || dim > 4) {
    throw std::invalid_argument("vector dimension must be in 1..4");
  }
}

}  // namespace

FpMatrix::FpMatrix(int prime, std::size_t rows, std::size_t cols)
    : prime_(prime), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (!is_prime(prime) || prime > 97) {
    throw std::invalid_argument("field must be F_p with p prime, p <= 97");
  }
}

FpMatrix FpMatrix::identity(int prime, std::size_t n) {
  FpMatrix m(prime, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, 1);
  }
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || prime_ != rhs.prime_) {
    throw std::invalid_argument("matrix shapes do not compose");
  }
  FpMatrix out(prime_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const int aik = at(i, k);
      if (aik == 0) {
        continue;
      }
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.a_[i * rhs.cols_ + j] = static_cast<std::uint8_t>(
            (out.a_[i * rhs.cols_ + j] + aik * rhs.at(k, j)) % prime_);
      }
    }
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || prime_ != rhs.prime_) {
    throw std::invalid_argument("matrix shapes do not match");
  }
  FpMatrix out(prime_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    out.a_[i] = static_cast<std::uint8_t>((a_[i] + rhs.a_[i]) % prime_);
  }
  return out;
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) {
    return false;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) != (i == j ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

bool FpMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](auto v) { return v == 0; });
}

std::size_t FpMatrix::rank() const {
  std::vector<int> m(a_.begin(), a_.end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pivot = rows_;
    for (std::size_t i = rank; i < rows_; ++i) {
      if (m[i * cols_ + col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows_) {
      continue;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap(m[rank * cols_ + j], m[pivot * cols_ + j]);
    }
    const int inv = modular_inverse(m[rank * cols_ + col], prime_);
    for (std::size_t j = 0; j < cols_; ++j) {
      m[rank * cols_ + j] = m[rank * cols_ + j] * inv % prime_;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == rank || m[i * cols_ + col] == 0) {
        continue;
      }
      const int factor = m[i * cols_ + col];
      for (std::size_t j = 0; j < cols_; ++j) {
        m[i * cols_ + j] =
            ((m[i * cols_ + j] - factor * m[rank * cols_ + j]) % prime_ +
             prime_) %
            prime_;
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) {
    return std::nullopt;
  }
  const std::size_t n = rows_;
  std::vector<int> m(n * 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * 2 * n + j] = at(i, j);
    }
    m[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (m[i * 2 * n + col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      return std::nullopt;
    }
    for (std::size_t j = 0; j < 2 * n; ++j) {
      std::swap(m[col * 2 * n + j], m[pivot * 2 * n + j]);
    }
    const int inv = modular_inverse(m[col * 2 * n + col], prime_);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      m[col * 2 * n + j] = m[col * 2 * n + j] * inv % prime_;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i * 2 * n + col] == 0) {
        continue;
      }
      const int factor = m[i * 2 * n + col];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        m[i * 2 * n + j] =
            ((m[i * 2 * n + j] - factor * m[col * 2 * n + j]) % prime_ +
             prime_) %
            prime_;
      }
    }
  }
  FpMatrix out(prime_, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.set(i, j, static_cast<std::uint8_t>(m[i * 2 * n + n + j]));
    }
  }
  return out;
}

LinearKernel::LinearKernel(int prime, int dim,
                           std::vector<std::pair<FreeWord, FpMatrix>> terms)
    : prime_(prime), dim_(dim) {
  check_field(prime, dim);
  const std::size_t n = static_cast<std::size_t>(dim);
  for (const auto& [word, matrix] : terms) {
    if (matrix.prime() != prime || matrix.rows() != n || matrix.cols() != n) {
      throw std::invalid_argument("kernel matrix shape mismatch");
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return shortlex_less(a.first, b.first);
  });
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    if (terms[i].first == terms[i + 1].first) {
      throw std::invalid_argument("kernel support words must be distinct");
    }
  }
  for (auto& [word, matrix] : terms) {
    if (!matrix.is_zero()) {
      terms_.emplace_back(word, matrix);
    }
  }
}

LinearKernel LinearKernel::identity(int prime, int dim) {
  return LinearKernel(
      prime, dim,
      {{FreeWord{}, FpMatrix::identity(prime, static_cast<std::size_t>(dim))}});
}

LinearKernel LinearKernel::zero(int prime, int dim) {
  return LinearKernel(prime, dim, {});
}

int LinearKernel::memory_radius() const {
  std::size_t m = 0;
  for (const auto& [word, matrix] : terms_) {
    m = std::max(m, word.length());
  }
  return static_cast<int>(m);
}

void LinearKernel::save(std::ostream& out) const {
  out << "prime " << prime_ << "\n";
  out << "dim " << dim_ << "\n";
  const std::size_t n = static_cast<std::size_t>(dim_);
  for (const auto& [word, matrix] : terms_) {
    out << word.str() << ":";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << " " << int(matrix.at(i, j));
      }
    }
    out << "\n";
  }
}

LinearKernel LinearKernel::load(std::istream& in) {
  auto expect = [&](const char* token) {
    std::string tok;
    if (!(in >> tok) || tok != token) {
      throw ParseError(std::string("expected '") + token + "' in kernel file");
    }
  };
  auto read_int = [&](const char* what) {
    std::string tok;
    if (!(in >> tok)) {
      throw ParseError(std::string("expected ") + what);
    }
    try {
      return std::stoi(tok);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected number for ") + what);
    }
  };
  expect("prime");
  const int prime = read_int("prime");
  expect("dim");
  const int dim = read_int("dim");
  try {
    check_field(prime, dim);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const std::size_t n = static_cast<std::size_t>(dim);
  std::vector<std::pair<FreeWord, FpMatrix>> terms;
  std::string line;
  std::getline(in, line);  // rest of dim line
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("kernel line needs 'word: entries'");
    }
    FreeWord word = FreeWord::parse(line.substr(0, colon));
    FpMatrix matrix(prime, n, n);
    std::stringstream ss(line.substr(colon + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int v;
        if (!(ss >> v)) {
          throw ParseError("kernel matrix needs dim*dim entries row-major");
        }
        if (v < 0 || v >= prime) {
          throw ParseError("kernel entry outside the field");
        }
        matrix.set(i, j, static_cast<std::uint8_t>(v));
      }
    }
    int extra;
    if (ss >> extra) {
      throw ParseError("kernel line has trailing entries");
    }
    terms.emplace_back(std::move(word), std::move(matrix));
  }
  try {
    return LinearKernel(prime, dim, std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid kernel: ") + e.what());
  }
}

VectorConfiguration lin_apply(const LinearKernel& kernel, const MarkedGroup& g,
                              const VectorConfiguration& x) {
  if (x.prime != kernel.prime() || x.dim != kernel.dim()) {
    throw std::invalid_argument("field or dimension mismatch");
  }
  if (!g.is_finite() || x.sites() != g.order()) {
    throw std::invalid_argument("configuration does not match the group");
  }
  const int p = kernel.prime();
  const std::size_t n = static_cast<std::size_t>(kernel.dim());
  std::vector<std::size_t> images;
  for (const auto& [word, matrix] : kernel.terms()) {
    images.push_back(g.eval_index(word));
  }
  VectorConfiguration y{x.prime, x.dim, std::vector<std::uint8_t>(x.values.size(), 0)};
  for (std::size_t e = 0; e < g.order(); ++e) {
    for (std::size_t t = 0; t < images.size(); ++t) {
      const auto& matrix = kernel.terms()[t].second;
      const std::size_t src = g.mul(e, images[t]) * n;
      for (std::size_t i = 0; i < n; ++i) {
        int acc = y.values[e * n + i];
        for (std::size_t j = 0; j < n; ++j) {
          acc += matrix.at(i, j) * x.values[src + j];
        }
        y.values[e * n + i] = static_cast<std::uint8_t>(acc % p);
      }
    }
  }
  return y;
}

VectorConfiguration lin_apply_periodic(const LinearKernel& kernel,
                                       const VectorConfiguration& x) {
  if (x.prime != kernel.prime() || x.dim != kernel.dim()) {
    throw std::invalid_argument("field or dimension mismatch");
  }
  const int p = kernel.prime();
  const std::size_t n = static_cast<std::size_t>(kernel.dim());
  const std::int64_t period = static_cast<std::int64_t>(x.sites());
  if (period == 0) {
    throw std::invalid_argument("empty configuration");
  }
  std::vector<std::int64_t> offsets;
  for (const auto& [word, matrix] : kernel.terms()) {
    if (word.max_generator() > 1) {
      throw std::invalid_argument("periodic application requires rank 1");
    }
    offsets.push_back(word.exponent_sum());
  }
  VectorConfiguration y{x.prime, x.dim, std::vector<std::uint8_t>(x.values.size(), 0)};
  for (std::int64_t e = 0; e < period; ++e) {
    for (std::size_t t = 0; t < offsets.size(); ++t) {
      const auto& matrix = kernel.terms()[t].second;
      const std::size_t src = static_cast<std::size_t>(
                                  (((e + offsets[t]) % period) + period) % period) * n;
      for (std::size_t i = 0; i < n; ++i) {
        int acc = y.values[static_cast<std::size_t>(e) * n + i];
        for (std::size_t j = 0; j < n; ++j) {
          acc += matrix.at(i, j) * x.values[src + j];
        }
        y.values[static_cast<std::size_t>(e) * n + i] =
            static_cast<std::uint8_t>(acc % p);
      }
    }
  }
  return y;
}

FpMatrix lin_matrix(const LinearKernel& kernel, const MarkedGroup& g) {
  if (!g.is_finite()) {
    throw std::invalid_argument("lin_matrix requires a finite quotient");
  }
  const std::size_t order = g.order();
  const std::size_t n = static_cast<std::size_t>(kernel.dim());
  check_cap(order * n, "regular representation size");
  const std::size_t size = order * n;
  FpMatrix m(kernel.prime(), size, size);
  for (const auto& [word, matrix] : kernel.terms()) {
    const std::size_t s = g.eval_index(word);
    for (std::size_t e = 0; e < order; ++e) {
      const std::size_t h = g.mul(e, s);
      // Block (e, h) accumulates M_s for every support word with image
      // e^-1 h = s.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t row = e * n + i;
          const std::size_t col = h * n + j;
          m.set(row, col,
                static_cast<std::uint8_t>(
                    (m.at(row, col) + matrix.at(i, j)) % kernel.prime()));
        }
      }
    }
  }
  return m;
}

LinDecision lin_decide(const LinearKernel& kernel, const MarkedGroup& g) {
  const FpMatrix m = lin_matrix(kernel, g);
  LinDecision d;
  d.size = m.rows();
  d.rank = m.rank();
  d.injective = d.rank == d.size;
  d.surjective = d.rank == d.size;
  // Square matrix over a field: injective iff surjective. The verdict can
  // never be injective-without-surjective; finite-scale surjunctivity.
  return d;
}

LinearKernel lin_inverse_kernel(const LinearKernel& kernel,
                                const MarkedGroup& g) {
  const FpMatrix m = lin_matrix(kernel, g);
  const auto inv = m.inverse();
  if (!inv) {
    throw NotInvertible("kernel is not invertible over " + g.describe());
  }
  const std::size_t n = static_cast<std::size_t>(kernel.dim());
  std::vector<std::pair<FreeWord, FpMatrix>> terms;
  // The inverse of an equivariant map is equivariant, so the inverse matrix
  // is determined by its block row at the identity.
  for (std::size_t h = 0; h < g.order(); ++h) {
    FpMatrix block(kernel.prime(), n, n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint8_t v = inv->at(i, h * n + j);
        block.set(i, j, v);
        zero = zero && v == 0;
      }
    }
    if (!zero) {
      terms.emplace_back(g.least_lift(h), std::move(block));
    }
  }
  return LinearKernel(kernel.prime(), kernel.dim(), std::move(terms));
}

LinearKernel convolve(const LinearKernel& a, const LinearKernel& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim()) {
    throw std::invalid_argument("kernels are not composable");
  }
  std::vector<std::pair<FreeWord, FpMatrix>> terms;
  auto find = [&](const FreeWord& w) -> FpMatrix* {
    for (auto& [word, matrix] : terms) {
      if (word == w) {
        return &matrix;
      }
    }
    return nullptr;
  };
  for (const auto& [s, ms] : a.terms()) {
    for (const auto& [t, mt] : b.terms()) {
      const FreeWord w = s * t;
      const FpMatrix product = ms * mt;
      if (FpMatrix* existing = find(w)) {
        *existing = *existing + product;
      } else {
        terms.emplace_back(w, product);
      }
    }
  }
  return LinearKernel(a.prime(), a.dim(), std::move(terms));
}

}  // namespace cag
