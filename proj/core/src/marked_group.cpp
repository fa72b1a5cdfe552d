#include "cag/marked_group.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cag/ball.hpp"
#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

namespace {

// First-visit BFS over the Cayley graph, parents in assignment order and
// letters in canonical order, assigns the shortlex-least word per element.
std::vector<FreeWord> compute_lifts(int rank, std::size_t order,
                                    const std::vector<std::size_t>& gen_images,
                                    const std::vector<std::size_t>& mul_table,
                                    const std::vector<std::size_t>& inverse) {
  auto mul = [&](std::size_t a, std::size_t b) {
    return mul_table[a * order + b];
  };
  std::vector<FreeWord> lifts(order);
  std::vector<bool> seen(order, false);
  seen[0] = true;
  std::deque<std::size_t> queue;
  queue.push_back(0);
  std::size_t found = 1;
  while (!queue.empty() && found < order) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (int g = 1; g <= rank; ++g) {
      for (bool inverted : {false, true}) {
        const auto& parent = lifts[u].letters();
        int letter = inverted ? -g : g;
        if (!parent.empty() && parent.back() == -letter) {
          continue;
        }
        std::size_t image = gen_images[static_cast<std::size_t>(g - 1)];
        std::size_t v = mul(u, inverted ? inverse[image] : image);
        if (!seen[v]) {
          seen[v] = true;
          lifts[v] = lifts[u] * FreeWord::generator(g, inverted);
          queue.push_back(v);
          ++found;
        }
      }
    }
  }
  if (found < order) {
    throw std::invalid_argument(
        "generator images do not generate the group; not a quotient marking");
  }
  return lifts;
}

std::string read_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) {
    throw ParseError(std::string("expected ") + what);
  }
  return tok;
}

std::uint64_t read_number(std::istream& in, const char* what) {
  std::string tok = read_token(in, what);
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected number for ") + what + ", got '" +
                     tok + "'");
  }
}

}  // namespace

struct MarkedGroupAccess;

MarkedGroup MarkedGroup::finite(int rank, std::size_t order,
                                std::vector<std::size_t> gen_images,
                                std::vector<std::size_t> mul_table) {
  if (rank < 1 || rank > 26) {
    throw std::invalid_argument("rank must be in 1..26");
  }
  if (order == 0) {
    throw std::invalid_argument("order must be positive");
  }
  check_cap(order, "finite group order");
  if (gen_images.size() != static_cast<std::size_t>(rank)) {
    throw std::invalid_argument("need one generator image per generator");
  }
  if (mul_table.size() != order * order) {
    throw std::invalid_argument("multiplication table must be order x order");
  }
  for (std::size_t v : gen_images) {
    if (v >= order) {
      throw std::invalid_argument("generator image out of range");
    }
  }
  for (std::size_t v : mul_table) {
    if (v >= order) {
      throw std::invalid_argument("multiplication table entry out of range");
    }
  }
  auto mul = [&](std::size_t a, std::size_t b) {
    return mul_table[a * order + b];
  };
  for (std::size_t a = 0; a < order; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) {
      throw std::invalid_argument("element 0 is not an identity");
    }
  }
  std::vector<std::size_t> inverse(order, order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      if (mul(a, b) == 0) {
        if (mul(b, a) != 0) {
          throw std::invalid_argument("one-sided inverse in table; not a group");
        }
        inverse[a] = b;
        break;
      }
    }
    if (inverse[a] == order) {
      throw std::invalid_argument("element without inverse; not a group");
    }
  }
  if (order <= 64) {
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        for (std::size_t c = 0; c < order; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw std::invalid_argument("multiplication table not associative");
          }
        }
      }
    }
  }

  MarkedGroup g;
  g.backend_ = Backend::Finite;
  g.rank_ = rank;
  FiniteData data;
  data.order = order;
  data.gen_images = std::move(gen_images);
  data.mul_table = std::move(mul_table);
  data.inverse = std::move(inverse);
  // Also serves as the generation check.
  data.lifts = compute_lifts(rank, data.order, data.gen_images, data.mul_table,
                             data.inverse);
  g.data_ = std::move(data);
  return g;
}

MarkedGroup MarkedGroup::cyclic(std::uint64_t modulus) {
  if (modulus == 0) {
    throw std::invalid_argument("modulus must be positive");
  }
  MarkedGroup g;
  g.backend_ = Backend::Cyclic;
  g.rank_ = 1;
  g.data_ = CyclicData{modulus};
  return g;
}

MarkedGroup MarkedGroup::zd(int dimensions) {
  if (dimensions < 1 || dimensions > 26) {
    throw std::invalid_argument("dimension must be in 1..26");
  }
  MarkedGroup g;
  g.backend_ = Backend::Zd;
  g.rank_ = dimensions;
  g.data_ = ZdData{dimensions};
  return g;
}

MarkedGroup MarkedGroup::free_group(int rank) {
  if (rank < 1 || rank > 26) {
    throw std::invalid_argument("rank must be in 1..26");
  }
  MarkedGroup g;
  g.backend_ = Backend::Free;
  g.rank_ = rank;
  g.data_ = FreeData{};
  return g;
}

MarkedGroup MarkedGroup::trivial(int rank) {
  return finite(rank, 1, std::vector<std::size_t>(static_cast<std::size_t>(rank), 0),
                {0});
}

MarkedGroup MarkedGroup::from_permutations(
    std::size_t domain, const std::vector<std::vector<std::size_t>>& gens) {
  if (gens.empty()) {
    throw std::invalid_argument("need at least one generator permutation");
  }
  using Perm = std::vector<std::size_t>;
  auto check_perm = [&](const Perm& p) {
    if (p.size() != domain) {
      throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<bool> hit(domain, false);
    for (std::size_t v : p) {
      if (v >= domain || hit[v]) {
        throw std::invalid_argument("not a permutation");
      }
      hit[v] = true;
    }
  };
  auto compose = [&](const Perm& a, const Perm& b) {
    Perm c(domain);
    for (std::size_t x = 0; x < domain; ++x) {
      c[x] = a[b[x]];
    }
    return c;
  };
  auto invert = [&](const Perm& p) {
    Perm q(domain);
    for (std::size_t x = 0; x < domain; ++x) {
      q[p[x]] = x;
    }
    return q;
  };

  Perm id(domain);
  for (std::size_t x = 0; x < domain; ++x) {
    id[x] = x;
  }
  std::vector<Perm> elements{id};
  std::map<Perm, std::size_t> index{{id, 0}};

  std::vector<Perm> step;
  for (const auto& p : gens) {
    check_perm(p);
    step.push_back(p);
    step.push_back(invert(p));
  }

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const auto& s : step) {
      Perm v = compose(elements[u], s);
      if (!index.contains(v)) {
        check_cap(elements.size() + 1, "permutation group closure");
        index.emplace(v, elements.size());
        elements.push_back(v);
        queue.push_back(elements.size() - 1);
      }
    }
  }

  std::size_t order = elements.size();
  std::vector<std::size_t> gen_images;
  for (const auto& p : gens) {
    gen_images.push_back(index.at(p));
  }
  std::vector<std::size_t> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      table[a * order + b] = index.at(compose(elements[a], elements[b]));
    }
  }
  return finite(static_cast<int>(gens.size()), order, std::move(gen_images),
                std::move(table));
}

const MarkedGroup::FiniteData& MarkedGroup::finite_data() const {
  if (backend_ != Backend::Finite) {
    throw std::invalid_argument("operation requires the finite backend");
  }
  return std::get<FiniteData>(data_);
}

std::size_t MarkedGroup::order() const {
  switch (backend_) {
    case Backend::Finite:
      return std::get<FiniteData>(data_).order;
    case Backend::Cyclic:
      return static_cast<std::size_t>(std::get<CyclicData>(data_).modulus);
    default:
      throw std::invalid_argument("group is infinite");
  }
}

std::string MarkedGroup::eval(const FreeWord& w) const {
  if (w.max_generator() > rank_) {
    throw std::invalid_argument("word uses a generator beyond the rank");
  }
  switch (backend_) {
    case Backend::Finite:
    case Backend::Cyclic:
      return std::to_string(eval_index(w));
    case Backend::Zd: {
      auto v = w.exponent_vector(std::get<ZdData>(data_).dimensions);
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
          s.push_back(',');
        }
        s += std::to_string(v[i]);
      }
      return s;
    }
    case Backend::Free:
      return w.str();
  }
  throw std::logic_error("unreachable");
}

bool MarkedGroup::is_identity(const FreeWord& w) const {
  if (w.max_generator() > rank_) {
    throw std::invalid_argument("word uses a generator beyond the rank");
  }
  switch (backend_) {
    case Backend::Finite:
    case Backend::Cyclic:
      return eval_index(w) == 0;
    case Backend::Zd: {
      auto v = w.exponent_vector(std::get<ZdData>(data_).dimensions);
      return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
    }
    case Backend::Free:
      return w.is_identity();
  }
  throw std::logic_error("unreachable");
}

std::size_t MarkedGroup::eval_index(const FreeWord& w) const {
  if (backend_ == Backend::Cyclic) {
    const auto n = std::get<CyclicData>(data_).modulus;
    const std::int64_t s = w.exponent_sum();
    const std::int64_t m = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((s % m) + m) % m);
  }
  const auto& data = finite_data();
  std::size_t e = 0;
  for (auto l : w.letters()) {
    std::size_t g = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
    std::size_t image = data.gen_images[g];
    e = data.mul_table[e * data.order + (l < 0 ? data.inverse[image] : image)];
  }
  return e;
}

std::size_t MarkedGroup::mul(std::size_t a, std::size_t b) const {
  if (backend_ == Backend::Cyclic) {
    const auto n = std::get<CyclicData>(data_).modulus;
    return static_cast<std::size_t>((a + b) % n);
  }
  const auto& data = finite_data();
  if (a >= data.order || b >= data.order) {
    throw std::invalid_argument("element index out of range");
  }
  return data.mul_table[a * data.order + b];
}

std::size_t MarkedGroup::inv(std::size_t a) const {
  if (backend_ == Backend::Cyclic) {
    const auto n = std::get<CyclicData>(data_).modulus;
    return static_cast<std::size_t>((n - a % n) % n);
  }
  const auto& data = finite_data();
  if (a >= data.order) {
    throw std::invalid_argument("element index out of range");
  }
  return data.inverse[a];
}

std::size_t MarkedGroup::generator_image(int generator) const {
  if (generator < 1 || generator > rank_) {
    throw std::invalid_argument("generator out of range");
  }
  if (backend_ == Backend::Cyclic) {
    return static_cast<std::size_t>(1 % std::get<CyclicData>(data_).modulus);
  }
  return finite_data().gen_images[static_cast<std::size_t>(generator - 1)];
}

FreeWord MarkedGroup::least_lift(std::size_t element) const {
  if (backend_ == Backend::Cyclic) {
    const auto n = std::get<CyclicData>(data_).modulus;
    element %= n;
    const std::uint64_t up = static_cast<std::uint64_t>(element);
    const std::uint64_t down = n - up;
    std::vector<int> letters;
    if (up == 0) {
      return FreeWord{};
    }
    if (up <= down) {
      letters.assign(static_cast<std::size_t>(up), 1);
    } else {
      letters.assign(static_cast<std::size_t>(down), -1);
    }
    return FreeWord::from_letters(letters);
  }
  const auto& data = finite_data();
  if (element >= data.order) {
    throw std::invalid_argument("element index out of range");
  }
  return data.lifts[element];
}

FreeWord MarkedGroup::canonical_lift(const FreeWord& w) const {
  switch (backend_) {
    case Backend::Finite:
    case Backend::Cyclic:
      return least_lift(eval_index(w));
    case Backend::Zd: {
      auto v = w.exponent_vector(std::get<ZdData>(data_).dimensions);
      std::vector<int> letters;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const int g = static_cast<int>(i) + 1;
        for (std::int64_t c = 0; c < (v[i] < 0 ? -v[i] : v[i]); ++c) {
          letters.push_back(v[i] < 0 ? -g : g);
        }
      }
      return FreeWord::from_letters(letters);
    }
    case Backend::Free:
      return w;
  }
  throw std::logic_error("unreachable");
}

void MarkedGroup::save(std::ostream& out) const {
  out << "rank " << rank_ << "\n";
  switch (backend_) {
    case Backend::Finite: {
      const auto& data = std::get<FiniteData>(data_);
      out << "finite\n" << data.order << "\n";
      for (std::size_t i = 0; i < data.gen_images.size(); ++i) {
        out << (i ? " " : "") << data.gen_images[i];
      }
      out << "\n";
      for (std::size_t a = 0; a < data.order; ++a) {
        for (std::size_t b = 0; b < data.order; ++b) {
          out << (b ? " " : "") << data.mul_table[a * data.order + b];
        }
        out << "\n";
      }
      break;
    }
    case Backend::Cyclic:
      out << "cyclic\n" << std::get<CyclicData>(data_).modulus << "\n";
      break;
    case Backend::Zd:
      out << "zd\n" << std::get<ZdData>(data_).dimensions << "\n";
      break;
    case Backend::Free:
      out << "free\n";
      break;
  }
}

MarkedGroup MarkedGroup::load(std::istream& in) {
  if (read_token(in, "'rank' header") != "rank") {
    throw ParseError("group file must start with 'rank k'");
  }
  const int rank = static_cast<int>(read_number(in, "rank"));
  const std::string backend = read_token(in, "backend selector");
  if (backend == "finite") {
    const std::size_t order =
        static_cast<std::size_t>(read_number(in, "element count"));
    std::vector<std::size_t> gen_images;
    for (int i = 0; i < rank; ++i) {
      gen_images.push_back(
          static_cast<std::size_t>(read_number(in, "generator image")));
    }
    std::vector<std::size_t> table;
    table.reserve(order * order);
    for (std::size_t i = 0; i < order * order; ++i) {
      table.push_back(
          static_cast<std::size_t>(read_number(in, "multiplication entry")));
    }
    try {
      return finite(rank, order, std::move(gen_images), std::move(table));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("invalid finite group: ") + e.what());
    }
  }
  if (backend == "cyclic") {
    if (rank != 1) {
      throw ParseError("cyclic backend requires rank 1");
    }
    return cyclic(read_number(in, "modulus"));
  }
  if (backend == "zd") {
    const int d = static_cast<int>(read_number(in, "dimension"));
    if (d != rank) {
      throw ParseError("zd backend requires dimension == rank");
    }
    return zd(d);
  }
  if (backend == "free") {
    return free_group(rank);
  }
  throw ParseError("unknown backend '" + backend + "'");
}

std::string MarkedGroup::describe() const {
  switch (backend_) {
    case Backend::Finite:
      return "finite[order=" + std::to_string(order()) +
             ",rank=" + std::to_string(rank_) + "]";
    case Backend::Cyclic:
      return "cyclic:" + std::to_string(std::get<CyclicData>(data_).modulus);
    case Backend::Zd:
      return "zd:" + std::to_string(std::get<ZdData>(data_).dimensions);
    case Backend::Free:
      return "free:" + std::to_string(rank_);
  }
  return {};
}

std::vector<FreeWord> membership_window(const MarkedGroup& g, int radius) {
  std::vector<FreeWord> window;
  for (const FreeWord& w : Ball::of(g.rank(), radius).words()) {
    if (g.is_identity(w)) {
      window.push_back(w);
    }
  }
  return window;
}

AgreementRadius marked_distance(const MarkedGroup& g1, const MarkedGroup& g2,
                                int rmax) {
  if (g1.rank() != g2.rank()) {
    throw std::invalid_argument("marked_distance requires equal ranks");
  }
  if (rmax < 0) {
    throw std::invalid_argument("rmax must be nonnegative");
  }
  const auto w1 = membership_window(g1, rmax);
  const auto w2 = membership_window(g2, rmax);
  auto prefix_size = [](const std::vector<FreeWord>& w, int t) {
    std::size_t i = 0;
    while (i < w.size() && w[i].length() <= static_cast<std::size_t>(t)) {
      ++i;
    }
    return i;
  };
  for (int t = 0; t <= rmax; ++t) {
    const std::size_t n1 = prefix_size(w1, t);
    const std::size_t n2 = prefix_size(w2, t);
    if (n1 != n2 || !std::equal(w1.begin(), w1.begin() + n1, w2.begin())) {
      return AgreementRadius::exactly(t - 1);
    }
  }
  return AgreementRadius::at_least(rmax);
}

}  // namespace cag
