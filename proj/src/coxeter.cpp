#include "pcells/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace pcells {

CartanSpec CartanSpec::parse(std::string_view label) {
  if (label.size() < 2)
    throw CoxeterError("bad Cartan type '" + std::string(label) + "'");
  CartanSpec spec;
  switch (std::toupper(static_cast<unsigned char>(label[0]))) {
  case 'A': spec.family = CartanFamily::A; break;
  case 'B': spec.family = CartanFamily::B; break;
  case 'C': spec.family = CartanFamily::C; break;
  case 'D': spec.family = CartanFamily::D; break;
  case 'E': spec.family = CartanFamily::E; break;
  case 'F': spec.family = CartanFamily::F; break;
  case 'G': spec.family = CartanFamily::G; break;
  default: throw CoxeterError("unsupported Cartan type '" + std::string(label) + "'");
  }
  std::string_view digits = label.substr(1);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      digits.size() > 3)
    throw CoxeterError("bad Cartan rank in '" + std::string(label) + "'");
  spec.rank = std::stoi(std::string(digits));

  bool ok = false;
  switch (spec.family) {
  case CartanFamily::A: ok = spec.rank >= 1; break;
  case CartanFamily::B:
  case CartanFamily::C: ok = spec.rank >= 2; break;
  case CartanFamily::D: ok = spec.rank >= 4; break;
  case CartanFamily::E: ok = spec.rank == 6; break;
  case CartanFamily::F: ok = spec.rank == 4; break;
  case CartanFamily::G: ok = spec.rank == 2; break;
  }
  if (!ok)
    throw CoxeterError("unsupported Cartan type '" + std::string(label) + "'");
  return spec;
}

std::string CartanSpec::label() const {
  static constexpr char letters[] = "ABCDEFG";
  return letters[static_cast<int>(family)] + std::to_string(rank);
}

int Element::length() const { return system_->length(index_); }
const std::vector<std::uint8_t>& Element::word() const { return system_->word(index_); }
std::string Element::str() const { return format_word(word()); }

std::string format_word(const std::vector<std::uint8_t>& word) {
  if (word.empty())
    return "e";
  std::string s;
  for (auto g : word) {
    if (g < 10)
      s.push_back(static_cast<char>('0' + g));
    else
      s += "[" + std::to_string(g) + "]";
  }
  return s;
}

namespace {

std::vector<int> cartan_matrix(const CartanSpec& spec) {
  const int n = spec.rank;
  std::vector<int> a(n * n, 0);
  auto set = [&](int i, int j, int value) { a[(i - 1) * n + (j - 1)] = value; };
  auto simple = [&](int i, int j) {
    set(i, j, -1);
    set(j, i, -1);
  };
  // double edge pointing from `from` to `to`
  auto dbl = [&](int from, int to) {
    set(from, to, -1);
    set(to, from, -2);
  };
  for (int i = 1; i <= n; ++i)
    set(i, i, 2);
  switch (spec.family) {
  case CartanFamily::A:
    for (int i = 1; i < n; ++i)
      simple(i, i + 1);
    break;
  case CartanFamily::B:
    for (int i = 1; i + 1 < n; ++i)
      simple(i, i + 1);
    dbl(n - 1, n);
    break;
  case CartanFamily::C:
    for (int i = 1; i + 1 < n; ++i)
      simple(i, i + 1);
    dbl(n, n - 1);
    break;
  case CartanFamily::D:
    for (int i = 1; i + 2 < n; ++i)
      simple(i, i + 1);
    simple(n - 2, n - 1);
    simple(n - 2, n);
    break;
  case CartanFamily::E:
    simple(1, 3);
    simple(3, 4);
    simple(4, 5);
    simple(5, 6);
    simple(2, 4);
    break;
  case CartanFamily::F:
    simple(1, 2);
    dbl(2, 3);
    simple(3, 4);
    break;
  case CartanFamily::G:
    set(1, 2, -1);
    set(2, 1, -3);
    break;
  }
  return a;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v)
      h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }
};

} // namespace

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(const CartanSpec& spec) {
  std::shared_ptr<CoxeterSystem> sys(new CoxeterSystem());
  sys->spec_ = spec;
  sys->rank_ = spec.rank;
  sys->cartan_ = cartan_matrix(spec);
  sys->enumerate();
  return sys;
}

int CoxeterSystem::coxeter_order(int i, int j) const {
  if (i == j)
    return 1;
  switch (cartan(i, j) * cartan(j, i)) {
  case 0: return 2;
  case 1: return 3;
  case 2: return 4;
  case 3: return 6;
  default: throw CoxeterError("non-crystallographic Cartan entry");
  }
}

void CoxeterSystem::enumerate() {
  const int n = rank_;

  // Positive roots, simple-root coordinates, by closure under reflections.
  {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < n; ++i) {
      std::vector<int> r(n, 0);
      r[i] = 1;
      seen.insert(r);
      queue.push_back(r);
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int i = 1; i <= n; ++i) {
        std::vector<int> r = queue[q];
        int pairing = 0;
        for (int j = 1; j <= n; ++j)
          pairing += r[j - 1] * cartan(i, j);
        r[i - 1] -= pairing;
        if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; }) && seen.insert(r).second)
          queue.push_back(r);
      }
    }
    positive_roots_.assign(seen.begin(), seen.end());
    std::stable_sort(positive_roots_.begin(), positive_roots_.end(),
                     [](const auto& a, const auto& b) {
                       int ha = 0, hb = 0;
                       for (int c : a) ha += c;
                       for (int c : b) hb += c;
                       return ha < hb;
                     });
  }

  // Elements are identified by their image of rho in fundamental-weight
  // coordinates. (s_i l)_j = l_j - l_i <a_i, a_j^v>.
  auto reflect = [&](std::vector<int> l, int i) {
    const int li = l[i - 1];
    for (int j = 1; j <= n; ++j)
      l[j - 1] -= li * cartan(j, i);
    return l;
  };

  std::unordered_map<std::vector<int>, std::uint32_t, VecHash> index_of;
  std::vector<std::vector<int>> weights;
  std::vector<std::vector<int>> level{std::vector<int>(n, 1)};
  std::vector<std::vector<std::uint8_t>> level_words{{}};

  while (!level.empty()) {
    // Sort the level by canonical word and assign indices.
    std::vector<std::size_t> perm(level.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
      perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return level_words[a] < level_words[b]; });
    for (std::size_t k : perm) {
      index_of.emplace(level[k], static_cast<std::uint32_t>(weights.size()));
      weights.push_back(level[k]);
      lengths_.push_back(static_cast<int>(level_words[k].size()));
      words_.push_back(level_words[k]);
    }

    std::unordered_map<std::vector<int>, std::size_t, VecHash> next_seen;
    std::vector<std::vector<int>> next;
    std::vector<std::vector<std::uint8_t>> next_words;
    for (std::size_t k : perm) {
      const auto& l = level[k];
      for (int i = 1; i <= n; ++i) {
        if (l[i - 1] <= 0)
          continue;
        auto m = reflect(l, i);
        if (next_seen.count(m))
          continue;
        // ShortLex-least word: the smallest left descent, then the rest.
        int first = 1;
        while (m[first - 1] >= 0)
          ++first;
        const auto& tail = words_[index_of.at(reflect(m, first))];
        std::vector<std::uint8_t> w{static_cast<std::uint8_t>(first)};
        w.insert(w.end(), tail.begin(), tail.end());
        next_seen.emplace(m, next.size());
        next.push_back(std::move(m));
        next_words.push_back(std::move(w));
      }
    }
    level = std::move(next);
    level_words = std::move(next_words);
  }

  const std::size_t N = weights.size();
  left_.resize(N * n);
  for (std::size_t w = 0; w < N; ++w)
    for (int i = 1; i <= n; ++i)
      left_[w * n + (i - 1)] = index_of.at(reflect(weights[w], i));

  auto eval_from = [&](std::uint32_t start, auto first, auto last) {
    // left-multiplies letters [first, last) taken from the right end
    std::uint32_t x = start;
    for (auto it = last; it != first;) {
      --it;
      x = left_[x * n + (*it - 1)];
    }
    return x;
  };
  right_.resize(N * n);
  inverse_.resize(N);
  for (std::size_t w = 0; w < N; ++w) {
    const auto& word = words_[w];
    for (int i = 1; i <= n; ++i)
      right_[w * n + (i - 1)] = eval_from(left_[0 * n + (i - 1)], word.begin(), word.end());
    std::uint32_t x = 0;
    for (auto g : word)
      x = left_[x * n + (g - 1)];
    inverse_[w] = x;
  }
}

Element CoxeterSystem::element(std::uint32_t index) const {
  if (index >= order())
    throw CoxeterError("element index out of range");
  return {this, index};
}

std::vector<Element> CoxeterSystem::elements() const {
  std::vector<Element> out;
  out.reserve(order());
  for (std::uint32_t i = 0; i < order(); ++i)
    out.emplace_back(this, i);
  return out;
}

void CoxeterSystem::check(const Element& a) const {
  if (a.system() != this)
    throw CoxeterError("element belongs to a different Coxeter system");
}

Element CoxeterSystem::generator(int s) const {
  if (s < 1 || s > rank_)
    throw CoxeterError("generator " + std::to_string(s) + " out of range 1.." +
                       std::to_string(rank_));
  return {this, left_[s - 1]};
}

Element CoxeterSystem::canonicalize(std::span<const int> word) const {
  std::uint32_t x = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 1 || *it > rank_)
      throw CoxeterError("generator " + std::to_string(*it) + " out of range 1.." +
                         std::to_string(rank_));
    x = left_[x * rank_ + (*it - 1)];
  }
  return {this, x};
}

Element CoxeterSystem::parse(std::string_view text) const {
  if (text.empty() || text == "e" || text == "id")
    return identity();
  std::vector<int> word;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw CoxeterError("bad word '" + std::string(text) + "'");
    word.push_back(c - '0');
  }
  return canonicalize(word);
}

Element CoxeterSystem::mul(const Element& a, const Element& b) const {
  check(a);
  check(b);
  std::uint32_t x = b.index();
  const auto& w = words_[a.index()];
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    x = left_[x * rank_ + (*it - 1)];
  return {this, x};
}

Element CoxeterSystem::inverse(const Element& a) const {
  check(a);
  return {this, inverse_[a.index()]};
}

Element CoxeterSystem::mul_gen(int s, const Element& w, Side side) const {
  check(w);
  generator(s);
  return {this, mul_gen(s, w.index(), side)};
}

std::vector<int> CoxeterSystem::descents(const Element& a, Side side) const {
  check(a);
  std::vector<int> out;
  for (int s = 1; s <= rank_; ++s)
    if (is_descent(s, a.index(), side))
      out.push_back(s);
  return out;
}

void CoxeterSystem::build_bruhat() const {
  const std::size_t N = order();
  const std::size_t words = (N + 63) / 64;
  below_.assign(N, std::vector<std::uint64_t>(words, 0));
  below_[0][0] = 1;
  // [e, w] = [e, sw] u s[e, sw] for any left descent s of w.
  for (std::size_t w = 1; w < N; ++w) {
    const int s = words_[w][0];
    const std::uint32_t u = left_[w * rank_ + (s - 1)];
    auto& dst = below_[w];
    const auto& src = below_[u];
    dst = src;
    for (std::size_t k = 0; k < words; ++k) {
      std::uint64_t bits = src[k];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        const std::uint32_t x = left_[(k * 64 + b) * rank_ + (s - 1)];
        dst[x / 64] |= std::uint64_t{1} << (x % 64);
      }
    }
  }
}

bool CoxeterSystem::bruhat_leq(std::uint32_t a, std::uint32_t b) const {
  std::call_once(bruhat_once_, [this] { build_bruhat(); });
  return (below_[b][a / 64] >> (a % 64)) & 1u;
}

bool CoxeterSystem::bruhat_leq(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return bruhat_leq(a.index(), b.index());
}

} // namespace pcells
