#include "cag/cellular_automaton.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cag/ball.hpp"
#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  const std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) {
      return kMax;
    }
    r *= base;
  }
  return r;
}

// Drops memory coordinates the table never depends on, keeping the relative
// order of the remaining words.
void prune_inessential(int alphabet, std::vector<FreeWord>& memory,
                       std::vector<std::uint8_t>& table) {
  const std::size_t d = memory.size();
  const std::size_t q = static_cast<std::size_t>(alphabet);
  std::vector<bool> essential(d, false);
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) {
    stride[i - 1] = stride[i] * q;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t idx = 0; idx < table.size() && !essential[i]; ++idx) {
      const std::size_t digit = (idx / stride[i]) % q;
      if (digit + 1 < q && table[idx] != table[idx + stride[i]]) {
        essential[i] = true;
      }
    }
  }
  if (std::all_of(essential.begin(), essential.end(), [](bool b) { return b; })) {
    return;
  }
  std::vector<FreeWord> kept;
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0; i < d; ++i) {
    if (essential[i]) {
      kept.push_back(memory[i]);
      kept_index.push_back(i);
    }
  }
  std::vector<std::uint8_t> new_table(saturating_pow(q, kept.size()));
  std::vector<std::uint8_t> tuple(d, 0);
  for (std::size_t new_idx = 0; new_idx < new_table.size(); ++new_idx) {
    std::size_t rem = new_idx;
    std::fill(tuple.begin(), tuple.end(), 0);
    for (std::size_t j = kept.size(); j-- > 0;) {
      tuple[kept_index[j]] = static_cast<std::uint8_t>(rem % q);
      rem /= q;
    }
    std::size_t old_idx = 0;
    for (std::size_t i = 0; i < d; ++i) {
      old_idx = old_idx * q + tuple[i];
    }
    new_table[new_idx] = table[old_idx];
  }
  memory = std::move(kept);
  table = std::move(new_table);
}

}  // namespace

CellularAutomaton::CellularAutomaton(int rank, int alphabet,
                                     std::vector<FreeWord> memory,
                                     std::vector<std::uint8_t> table)
    : rank_(rank),
      alphabet_(alphabet),
      memory_(std::move(memory)),
      table_(std::move(table)) {
  if (rank < 1 || rank > 26) {
    throw std::invalid_argument("rank must be in 1..26");
  }
  if (alphabet < 1 || alphabet > 255) {
    throw std::invalid_argument("alphabet size must be in 1..255");
  }
  for (std::size_t i = 0; i < memory_.size(); ++i) {
    if (memory_[i].max_generator() > rank) {
      throw std::invalid_argument("memory word uses a generator beyond rank");
    }
    for (std::size_t j = i + 1; j < memory_.size(); ++j) {
      if (memory_[i] == memory_[j]) {
        throw std::invalid_argument("memory words must be distinct");
      }
    }
  }
  const std::size_t expected =
      saturating_pow(static_cast<std::size_t>(alphabet), memory_.size());
  check_cap(expected, "rule table");
  if (table_.size() != expected) {
    throw std::invalid_argument("rule table must have alphabet^arity entries");
  }
  for (auto s : table_) {
    if (s >= alphabet_) {
      throw std::invalid_argument("rule table symbol outside alphabet");
    }
  }
}

CellularAutomaton CellularAutomaton::identity(int rank, int alphabet) {
  std::vector<std::uint8_t> table(static_cast<std::size_t>(alphabet));
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = static_cast<std::uint8_t>(i);
  }
  return CellularAutomaton(rank, alphabet, {FreeWord{}}, std::move(table));
}

CellularAutomaton CellularAutomaton::constant(int rank, int alphabet,
                                              std::uint8_t symbol) {
  return CellularAutomaton(rank, alphabet, {}, {symbol});
}

CellularAutomaton CellularAutomaton::eca(int code) {
  if (code < 0 || code > 255) {
    throw std::invalid_argument("elementary rule code must be in 0..255");
  }
  std::vector<FreeWord> memory{FreeWord::generator(1, true), FreeWord{},
                               FreeWord::generator(1, false)};
  std::vector<std::uint8_t> table(8);
  for (int idx = 0; idx < 8; ++idx) {
    table[static_cast<std::size_t>(idx)] =
        static_cast<std::uint8_t>((code >> idx) & 1);
  }
  return CellularAutomaton(1, 2, std::move(memory), std::move(table));
}

int CellularAutomaton::memory_radius() const {
  std::size_t m = 0;
  for (const auto& w : memory_) {
    m = std::max(m, w.length());
  }
  return static_cast<int>(m);
}

std::uint8_t CellularAutomaton::local(
    const std::vector<std::uint8_t>& tuple) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    idx = idx * static_cast<std::size_t>(alphabet_) + tuple[i];
  }
  return table_[idx];
}

PeriodicConfiguration CellularAutomaton::apply(
    const PeriodicConfiguration& x) const {
  if (x.alphabet != alphabet_) {
    throw std::invalid_argument("alphabet mismatch");
  }
  if (rank_ != 1) {
    throw std::invalid_argument("periodic configurations require rank 1");
  }
  std::vector<std::int64_t> offsets;
  offsets.reserve(memory_.size());
  for (const auto& s : memory_) {
    offsets.push_back(s.exponent_sum());
  }
  PeriodicConfiguration y;
  y.alphabet = alphabet_;
  y.values.resize(x.values.size());
  std::vector<std::uint8_t> tuple(memory_.size());
  for (int g = 0; g < x.period(); ++g) {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      tuple[i] = x.at(g + offsets[i]);
    }
    y.values[static_cast<std::size_t>(g)] = local(tuple);
  }
  return y;
}

FiniteConfiguration CellularAutomaton::apply(
    const FiniteConfiguration& x) const {
  if (x.alphabet != alphabet_) {
    throw std::invalid_argument("alphabet mismatch");
  }
  const MarkedGroup& g = x.group;
  if (g.rank() != rank_) {
    throw std::invalid_argument("rank mismatch");
  }
  std::vector<std::size_t> elements;
  elements.reserve(memory_.size());
  for (const auto& s : memory_) {
    elements.push_back(g.eval_index(s));
  }
  FiniteConfiguration y{g, alphabet_, {}};
  y.values.resize(x.values.size());
  std::vector<std::uint8_t> tuple(memory_.size());
  for (std::size_t e = 0; e < x.values.size(); ++e) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      tuple[i] = x.values[g.mul(e, elements[i])];
    }
    y.values[e] = local(tuple);
  }
  return y;
}

WindowPattern CellularAutomaton::window_apply(const WindowPattern& p,
                                              int out_radius) const {
  if (p.rank != rank_) {
    throw std::invalid_argument("rank mismatch");
  }
  if (out_radius < 0 || p.radius < out_radius + memory_radius()) {
    throw std::invalid_argument(
        "window radius insufficient: need out_radius + memory_radius");
  }
  const Ball& source = Ball::of(rank_, p.radius);
  const Ball& target = Ball::of(rank_, out_radius);
  WindowPattern out;
  out.rank = rank_;
  out.radius = out_radius;
  out.labels.reserve(target.size());
  std::vector<std::uint8_t> tuple(memory_.size());
  for (const FreeWord& w : target.words()) {
    for (std::size_t i = 0; i < memory_.size(); ++i) {
      tuple[i] = p.labels[source.index_of(w * memory_[i])];
    }
    out.labels.push_back(local(tuple));
  }
  return out;
}

std::function<WindowPattern(const WindowPattern&)>
CellularAutomaton::window_map(int out_radius) const {
  return [ca = *this, out_radius](const WindowPattern& p) {
    return ca.window_apply(p, out_radius);
  };
}

void CellularAutomaton::save(std::ostream& out) const {
  out << "rank " << rank_ << "\n";
  out << "alphabet " << alphabet_ << "\n";
  out << "memory";
  for (const auto& s : memory_) {
    out << " " << s.str();
  }
  out << "\n";
  if (alphabet_ > 10) {
    throw std::invalid_argument("rule files support alphabets up to 10");
  }
  const std::size_t d = memory_.size();
  std::vector<std::uint8_t> tuple(d, 0);
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = d; j-- > 0;) {
      tuple[j] = static_cast<std::uint8_t>(rem % alphabet_);
      rem /= static_cast<std::size_t>(alphabet_);
    }
    for (std::size_t j = 0; j < d; ++j) {
      out << int(tuple[j]);
    }
    out << (d == 0 ? "-> " : " -> ") << int(table_[idx]) << "\n";
  }
}

CellularAutomaton CellularAutomaton::load(std::istream& in) {
  auto expect = [&](const char* token) {
    std::string tok;
    if (!(in >> tok) || tok != token) {
      throw ParseError(std::string("expected '") + token + "' in rule file");
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
  expect("rank");
  const int rank = read_int("rank");
  expect("alphabet");
  const int alphabet = read_int("alphabet");
  if (alphabet < 1 || alphabet > 10) {
    throw ParseError("rule files support alphabets 1..10");
  }
  expect("memory");
  std::string line;
  std::getline(in, line);
  std::vector<FreeWord> memory;
  {
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      memory.push_back(FreeWord::parse(tok));
    }
  }
  const std::size_t entries =
      saturating_pow(static_cast<std::size_t>(alphabet), memory.size());
  check_cap(entries, "rule table");
  std::vector<std::uint8_t> table(entries, 0);
  for (std::size_t row = 0; row < entries; ++row) {
    std::string tuple_tok;
    if (memory.empty()) {
      tuple_tok.clear();
    } else if (!(in >> tuple_tok)) {
      throw ParseError("rule file ends before the table is total");
    }
    std::string arrow;
    if (!(in >> arrow) || arrow != "->") {
      throw ParseError("expected '->' in rule row");
    }
    const int symbol = read_int("rule symbol");
    if (symbol < 0 || symbol >= alphabet) {
      throw ParseError("rule symbol outside alphabet");
    }
    if (memory.empty()) {
      table[0] = static_cast<std::uint8_t>(symbol);
      break;
    }
    if (tuple_tok.size() != memory.size()) {
      throw ParseError("rule row tuple has wrong arity");
    }
    std::size_t idx = 0;
    for (char c : tuple_tok) {
      if (c < '0' || c >= '0' + alphabet) {
        throw ParseError("rule row tuple symbol outside alphabet");
      }
      idx = idx * static_cast<std::size_t>(alphabet) +
            static_cast<std::size_t>(c - '0');
    }
    if (idx != row) {
      throw ParseError("rule rows must appear in lexicographic tuple order");
    }
    table[idx] = static_cast<std::uint8_t>(symbol);
  }
  try {
    return CellularAutomaton(rank, alphabet, std::move(memory),
                             std::move(table));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid rule: ") + e.what());
  }
}

CellularAutomaton ca_compose(const CellularAutomaton& outer,
                             const CellularAutomaton& inner) {
  if (outer.rank() != inner.rank()) {
    throw std::invalid_argument("composition requires equal ranks");
  }
  if (outer.alphabet() != inner.alphabet()) {
    throw std::invalid_argument("composition requires equal alphabets");
  }
  const int q = outer.alphabet();
  std::vector<FreeWord> products;
  for (const auto& s : outer.memory()) {
    for (const auto& t : inner.memory()) {
      products.push_back(s * t);
    }
  }
  std::sort(products.begin(), products.end(), ShortlexLess{});
  products.erase(std::unique(products.begin(), products.end()),
                 products.end());

  std::map<FreeWord, std::size_t, ShortlexLess> position;
  for (std::size_t i = 0; i < products.size(); ++i) {
    position.emplace(products[i], i);
  }
  std::vector<std::size_t> product_pos(outer.arity() * inner.arity());
  for (std::size_t i = 0; i < outer.arity(); ++i) {
    for (std::size_t j = 0; j < inner.arity(); ++j) {
      product_pos[i * inner.arity() + j] =
          position.at(outer.memory()[i] * inner.memory()[j]);
    }
  }

  const std::size_t entries =
      saturating_pow(static_cast<std::size_t>(q), products.size());
  check_cap(entries, "composed rule table");

  std::vector<std::uint8_t> table(entries);
  std::vector<std::uint8_t> assignment(products.size(), 0);
  std::vector<std::uint8_t> mid(outer.arity());
  std::vector<std::uint8_t> inner_tuple(inner.arity());
  for (std::size_t idx = 0;; ++idx) {
    for (std::size_t i = 0; i < outer.arity(); ++i) {
      for (std::size_t j = 0; j < inner.arity(); ++j) {
        inner_tuple[j] = assignment[product_pos[i * inner.arity() + j]];
      }
      mid[i] = inner.local(inner_tuple);
    }
    table[idx] = outer.local(mid);
    std::size_t c = assignment.size();
    bool done = true;
    while (c > 0) {
      --c;
      if (++assignment[c] < q) {
        done = false;
        break;
      }
      assignment[c] = 0;
    }
    if (done) {
      break;
    }
  }
  return CellularAutomaton(outer.rank(), q, std::move(products),
                           std::move(table));
}

CellularAutomaton canonicalize_over(const CellularAutomaton& tau,
                                    const MarkedGroup& g) {
  if (g.rank() != tau.rank()) {
    throw std::invalid_argument("rank mismatch");
  }
  const int q = tau.alphabet();
  // Distinct images in order of first occurrence.
  std::vector<std::string> image_of(tau.arity());
  std::vector<std::size_t> class_of(tau.arity());
  std::vector<FreeWord> lifts;
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < tau.arity(); ++i) {
    image_of[i] = g.eval(tau.memory()[i]);
    auto it = std::find(seen.begin(), seen.end(), image_of[i]);
    if (it == seen.end()) {
      class_of[i] = seen.size();
      seen.push_back(image_of[i]);
      lifts.push_back(g.canonical_lift(tau.memory()[i]));
    } else {
      class_of[i] = static_cast<std::size_t>(it - seen.begin());
    }
  }
  const std::size_t entries =
      saturating_pow(static_cast<std::size_t>(q), lifts.size());
  check_cap(entries, "canonicalized rule table");
  std::vector<std::uint8_t> table(entries);
  std::vector<std::uint8_t> assignment(lifts.size(), 0);
  std::vector<std::uint8_t> tuple(tau.arity());
  for (std::size_t idx = 0;; ++idx) {
    for (std::size_t i = 0; i < tau.arity(); ++i) {
      tuple[i] = assignment[class_of[i]];
    }
    table[idx] = tau.local(tuple);
    std::size_t c = assignment.size();
    bool done = true;
    while (c > 0) {
      --c;
      if (++assignment[c] < q) {
        done = false;
        break;
      }
      assignment[c] = 0;
    }
    if (done) {
      break;
    }
  }
  return CellularAutomaton(tau.rank(), q, std::move(lifts), std::move(table));
}

CellularAutomaton pullback_ca(const CellularAutomaton& tau,
                              const MarkedGroup& g) {
  if (g.rank() != tau.rank()) {
    throw std::invalid_argument("rank mismatch");
  }
  std::vector<FreeWord> lifts;
  lifts.reserve(tau.arity());
  for (const auto& s : tau.memory()) {
    lifts.push_back(g.canonical_lift(s));
  }
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    for (std::size_t j = i + 1; j < lifts.size(); ++j) {
      if (lifts[i] == lifts[j]) {
        throw std::invalid_argument(
            "memory words collide in the quotient; canonicalize_over first");
      }
    }
  }
  return CellularAutomaton(tau.rank(), tau.alphabet(), std::move(lifts),
                           std::vector<std::uint8_t>(tau.table()));
}

bool extensionally_equal(const CellularAutomaton& a,
                         const CellularAutomaton& b) {
  if (a.rank() != b.rank() || a.alphabet() != b.alphabet()) {
    throw std::invalid_argument("automata are not comparable");
  }
  const int m = std::max(a.memory_radius(), b.memory_radius());
  const WindowSet probes =
      WindowSet::all_patterns(a.rank(), m, a.alphabet());
  for (const auto& p : probes.patterns()) {
    if (a.window_apply(p, 0).labels != b.window_apply(p, 0).labels) {
      return false;
    }
  }
  return true;
}

bool equal_on_fix(const CellularAutomaton& a, const CellularAutomaton& b,
                  const MarkedGroup& g, int out_radius) {
  if (a.rank() != b.rank() || a.alphabet() != b.alphabet()) {
    throw std::invalid_argument("automata are not comparable");
  }
  const int m = std::max(a.memory_radius(), b.memory_radius());
  const WindowSet probes = fix_window(g, a.alphabet(), out_radius + m);
  for (const auto& p : probes.patterns()) {
    if (a.window_apply(p, out_radius).labels !=
        b.window_apply(p, out_radius).labels) {
      return false;
    }
  }
  return true;
}

namespace {

CellularAutomaton synthesize_from_observations(
    int rank, int alphabet, int bound, std::uint8_t fill,
    const std::vector<std::pair<WindowPattern, std::uint8_t>>& observations) {
  for (int t = 0; t <= bound; ++t) {
    const Ball& ball = Ball::of(rank, t);
    const std::size_t entries =
        saturating_pow(static_cast<std::size_t>(alphabet), ball.size());
    check_cap(entries, "synthesized rule table");
    std::vector<std::uint8_t> table(entries, fill);
    std::vector<bool> defined(entries, false);
    bool consistent = true;
    for (const auto& [pattern, out] : observations) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < ball.size(); ++i) {
        idx = idx * static_cast<std::size_t>(alphabet) + pattern.labels[i];
      }
      if (defined[idx] && table[idx] != out) {
        consistent = false;
        break;
      }
      defined[idx] = true;
      table[idx] = out;
    }
    if (!consistent) {
      continue;
    }
    std::vector<FreeWord> memory = ball.words();
    prune_inessential(alphabet, memory, table);
    return CellularAutomaton(rank, alphabet, std::move(memory),
                             std::move(table));
  }
  throw NotLocal(bound);
}

}  // namespace

CellularAutomaton synthesize_from_window_map(
    int rank, int alphabet, int source_radius,
    const std::function<std::uint8_t(const WindowPattern&)>& f, int bound,
    std::uint8_t fill) {
  const WindowSet domain =
      WindowSet::all_patterns(rank, source_radius, alphabet);
  std::vector<std::pair<WindowPattern, std::uint8_t>> observations;
  observations.reserve(domain.size());
  for (const auto& p : domain.patterns()) {
    const std::uint8_t out = f(p);
    if (out >= alphabet) {
      throw std::invalid_argument("window map output outside alphabet");
    }
    observations.emplace_back(p, out);
  }
  // Restrictions beyond the source radius observe nothing new.
  const int effective = std::min(bound, source_radius);
  auto restricted = observations;
  for (auto& [pattern, out] : restricted) {
    pattern = pattern.restricted(std::min(pattern.radius, effective));
  }
  try {
    return synthesize_from_observations(rank, alphabet, effective, fill,
                                        restricted);
  } catch (const NotLocal&) {
    throw NotLocal(bound);
  }
}

CellularAutomaton synthesize_from_periodic_map(
    int alphabet, int period,
    const std::function<PeriodicConfiguration(const PeriodicConfiguration&)>& f,
    int bound, std::uint8_t fill) {
  if (period < 1) {
    throw std::invalid_argument("period must be positive");
  }
  const std::size_t count =
      saturating_pow(static_cast<std::size_t>(alphabet),
                     static_cast<std::size_t>(period));
  check_cap(count, "periodic synthesis domain");

  std::vector<PeriodicConfiguration> domain;
  domain.reserve(count);
  PeriodicConfiguration x;
  x.alphabet = alphabet;
  x.values.assign(static_cast<std::size_t>(period), 0);
  for (;;) {
    domain.push_back(x);
    std::size_t i = x.values.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++x.values[i] < alphabet) {
        done = false;
        break;
      }
      x.values[i] = 0;
    }
    if (done) {
      break;
    }
  }

  std::vector<PeriodicConfiguration> images;
  images.reserve(domain.size());
  for (const auto& c : domain) {
    PeriodicConfiguration y = f(c);
    if (y.alphabet != alphabet || y.period() != period) {
      throw std::invalid_argument("periodic map must preserve the domain");
    }
    images.push_back(std::move(y));
  }
  // Equivariance spot-check over the generator shift on the whole domain.
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (f(shift_act(1, domain[i])) != shift_act(1, images[i])) {
      throw NotEquivariant();
    }
  }

  const int max_radius = std::min(bound, period);
  std::vector<std::pair<WindowPattern, std::uint8_t>> observations;
  const Ball& ball = Ball::of(1, max_radius);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    WindowPattern p;
    p.rank = 1;
    p.radius = max_radius;
    p.labels.reserve(ball.size());
    for (const FreeWord& w : ball.words()) {
      p.labels.push_back(domain[i].at(w.exponent_sum()));
    }
    observations.emplace_back(std::move(p), images[i].values[0]);
  }
  try {
    return synthesize_from_observations(1, alphabet, max_radius, fill,
                                        observations);
  } catch (const NotLocal&) {
    throw NotLocal(bound);
  }
}

}  // namespace cag
