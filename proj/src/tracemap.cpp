#include "engel/tracemap.hpp"

#include <algorithm>
#include <unordered_map>

namespace engel {

TracePoly TracePoly::constant(BigInt c) {
  TracePoly p;
  p.add_term(Monomial{}, c);
  return p;
}

TracePoly TracePoly::var_s() {
  TracePoly p;
  p.add_term(Monomial{1, 0, 0}, 1);
  return p;
}

TracePoly TracePoly::var_u() {
  TracePoly p;
  p.add_term(Monomial{0, 1, 0}, 1);
  return p;
}

TracePoly TracePoly::var_t() {
  TracePoly p;
  p.add_term(Monomial{0, 0, 1}, 1);
  return p;
}

void TracePoly::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TracePoly& TracePoly::operator+=(const TracePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

TracePoly& TracePoly::operator-=(const TracePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

TracePoly operator*(const TracePoly& a, const TracePoly& b) {
  TracePoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term(Monomial{ma.s + mb.s, ma.u + mb.u, ma.t + mb.t}, ca * cb);
  return r;
}

Elt TracePoly::eval(const Field& F, Elt s, Elt u, Elt t) const {
  Elt acc = 0;
  for (const auto& [m, c] : terms_) {
    BigInt r = c % F.p();
    Elt coeff = F.from_int(std::int64_t(r));
    Elt term = coeff;
    term = F.mul(term, F.pow(s, m.s));
    term = F.mul(term, F.pow(u, m.u));
    term = F.mul(term, F.pow(t, m.t));
    acc = F.add(acc, term);
  }
  return acc;
}

std::string TracePoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    auto emit = [&](const char* v, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    emit("s", m.s);
    emit("u", m.u);
    emit("t", m.t);
    if (mono.empty()) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += mono;
    }
  }
  return out;
}

namespace {

// letters: 0 = x, 1 = x^-1, 2 = y, 3 = y^-1
using Letters = std::vector<std::uint8_t>;

std::uint8_t letter_inv(std::uint8_t l) { return l ^ 1; }

Letters expand(const Word& w) {
  Letters out;
  for (const auto& s : w.syllables()) {
    std::uint8_t base = s.gen == 'x' ? 0 : 2;
    std::uint8_t l = s.exp > 0 ? base : letter_inv(base);
    std::int64_t n = s.exp > 0 ? s.exp : -s.exp;
    for (std::int64_t i = 0; i < n; ++i) out.push_back(l);
  }
  return out;
}

void free_reduce(Letters& w) {
  Letters out;
  for (auto l : w) {
    if (!out.empty() && out.back() == letter_inv(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  w = std::move(out);
}

void cyclic_reduce(Letters& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == letter_inv(w[hi - 1])) {
    ++lo;
    --hi;
  }
  w = Letters(w.begin() + lo, w.begin() + hi);
}

// least rotation of w and of its formal inverse: trace is invariant under both
std::string canonical_key(const Letters& w) {
  auto best_rotation = [](const Letters& v) {
    std::string best;
    const std::size_t n = v.size();
    for (std::size_t r = 0; r < n; ++r) {
      std::string cand;
      cand.reserve(n);
      for (std::size_t i = 0; i < n; ++i) cand += char('a' + v[(r + i) % n]);
      if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
  };
  if (w.empty()) return "";
  Letters inv(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    inv[i] = letter_inv(w[w.size() - 1 - i]);
  return std::min(best_rotation(w), best_rotation(inv));
}

class TraceCompiler {
 public:
  TracePoly run(Letters w) {
    free_reduce(w);
    return tr(std::move(w));
  }

 private:
  TracePoly tr(Letters w) {
    cyclic_reduce(w);
    if (w.empty()) return TracePoly::constant(2);

    std::string key = canonical_key(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    TracePoly result = compute(w);
    memo_.emplace(std::move(key), result);
    return result;
  }

  static TracePoly var_of(std::uint8_t l) {
    return (l >> 1) == 0 ? TracePoly::var_s() : TracePoly::var_t();
  }

  TracePoly compute(const Letters& w) {
    // positive base cases
    if (w.size() == 1 && (w[0] == 0 || w[0] == 2)) return var_of(w[0]);
    if (w.size() == 2 && ((w[0] == 0 && w[1] == 2) || (w[0] == 2 && w[1] == 0)))
      return TracePoly::var_u();

    // eliminate an inverse letter: rotate it to the end, then
    // tr(V g^-1) = tr(g) tr(V) - tr(V g)
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 1 || w[i] == 3) {
        Letters v;
        v.reserve(w.size() - 1);
        for (std::size_t j = i + 1; j < w.size(); ++j) v.push_back(w[j]);
        for (std::size_t j = 0; j < i; ++j) v.push_back(w[j]);
        std::uint8_t g = letter_inv(w[i]);
        Letters vg = v;
        vg.push_back(g);
        free_reduce(vg);
        return var_of(g) * tr(std::move(v)) - tr(std::move(vg));
      }
    }

    // positive word, length >= 2, not a base case: some generator repeats;
    // split tr(g A g B) = tr(gA) tr(gB) - tr(A B^-1)
    std::uint8_t g = 0;
    std::size_t first = w.size(), second = w.size();
    for (std::uint8_t cand : {std::uint8_t(0), std::uint8_t(2)}) {
      std::size_t a = w.size(), b = w.size();
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == cand) {
          if (a == w.size())
            a = i;
          else {
            b = i;
            break;
          }
        }
      }
      if (b != w.size()) {
        g = cand;
        first = a;
        second = b;
        break;
      }
    }
    if (second == w.size())
      throw std::logic_error("trace_polynomial: unreachable word shape");

    Letters ga, gb, ab_inv;
    ga.push_back(g);
    for (std::size_t i = first + 1; i < second; ++i) ga.push_back(w[i]);
    gb.push_back(g);
    for (std::size_t i = second + 1; i < w.size(); ++i) gb.push_back(w[i]);
    for (std::size_t i = 0; i < first; ++i) gb.push_back(w[i]);
    // A = w(first+1..second), B = w(second+1..) + w(..first)
    for (std::size_t i = first + 1; i < second; ++i) ab_inv.push_back(w[i]);
    for (std::size_t i = first; i-- > 0;) ab_inv.push_back(letter_inv(w[i]));
    for (std::size_t i = w.size(); i-- > second + 1;)
      ab_inv.push_back(letter_inv(w[i]));
    free_reduce(ab_inv);
    return tr(std::move(ga)) * tr(std::move(gb)) - tr(std::move(ab_inv));
  }

  std::unordered_map<std::string, TracePoly> memo_;
};

}  // namespace

TracePoly trace_polynomial(const Word& w) {
  TraceCompiler compiler;
  return compiler.run(expand(w));
}

Elt p_comm(const Field& F, Elt s, Elt u, Elt t) {
  Elt v = F.add(F.add(F.mul(s, s), F.mul(t, t)), F.mul(u, u));
  v = F.sub(v, F.mul(F.mul(s, u), t));
  return F.sub(v, F.from_int(2));
}

TraceTriple psi(const Field& F, Elt s, Elt u, Elt t) {
  return {p_comm(F, s, u, t), t, t};
}

PlanePoint mu(const Field& F, PlanePoint pt) {
  Elt t2 = F.mul(pt.t, pt.t);
  Elt s = F.add(F.mul(pt.s, F.sub(pt.s, t2)),
                F.sub(F.add(t2, t2), F.from_int(2)));
  return {s, pt.t};
}

Elt rho_n(const Field& F, PlanePoint pt, unsigned n) {
  Elt t2 = F.mul(pt.t, pt.t);
  Elt c = F.sub(F.add(t2, t2), F.from_int(2));
  Elt s = pt.s;
  for (unsigned i = 0; i < n; ++i) s = F.add(F.mul(s, F.sub(s, t2)), c);
  return s;
}

std::pair<Elt, Elt> m_conj(const Field& F, Elt z, Elt k) {
  return {F.mul(z, F.sub(z, k)), k};
}

PlanePoint mu_char2(const Field& F, PlanePoint pt) {
  if (!F.char2())
    throw std::invalid_argument("mu_char2: field has odd characteristic");
  Elt t2 = F.mul(pt.t, pt.t);
  return {F.mul(pt.s, F.sub(pt.s, t2)), pt.t};
}

Elt rho_closed_t2_is_4(const Field& F, Elt s, unsigned n) {
  Elt two = F.from_int(2);
  return F.add(F.pow2n(F.sub(s, two), n), two);
}

Elt rho_closed_t2_is_2(const Field& F, Elt s, unsigned n) {
  Elt one = F.one();
  return F.add(F.pow2n(F.sub(s, one), n), one);
}

}  // namespace engel
