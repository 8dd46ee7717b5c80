#include "ptree/pcgroup.hpp"

#include <algorithm>
#include <sstream>

namespace ptree {

int mod(long long a, int p) {
  long long r = a % p;
  return int(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
  a = mod(a, p);
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw GroupError("no inverse mod p");
}

std::vector<Term> to_terms(const Exps& v) {
  std::vector<Term> t;
  for (int i = 0; i < int(v.size()); ++i)
    if (v[i]) t.push_back({i, v[i]});
  return t;
}

PcGroup::PcGroup(int p, int n)
    : weights(n, 1), defs(n), p_(p), n_(n), pow_(n, Exps(n, 0)),
      comm_(size_t(n) * n, Exps(n, 0)) {
  finalize();
}

void PcGroup::set_power(int i, const Exps& rhs) {
  for (int k = 0; k <= i; ++k)
    if (rhs[k]) throw GroupError("power relation must lie above its generator");
  pow_[i] = rhs;
  for (auto& e : pow_[i]) e = mod(e, p_);
}

void PcGroup::set_comm(int j, int i, const Exps& rhs) {
  if (j <= i) throw GroupError("commutator relation needs j > i");
  for (int k = 0; k <= j; ++k)
    if (rhs[k]) throw GroupError("commutator relation must lie above g_j");
  comm_[j * n_ + i] = rhs;
  for (auto& e : comm_[j * n_ + i]) e = mod(e, p_);
}

void PcGroup::finalize() {
  powword_.assign(n_, {});
  conjword_.assign(size_t(n_) * n_, {});
  trivial_.assign(size_t(n_) * n_, 1);
  central_.assign(n_, 1);
  for (int i = 0; i < n_; ++i) powword_[i] = to_terms(pow_[i]);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      const Exps& c = comm_[j * n_ + i];
      bool triv = std::all_of(c.begin(), c.end(), [](int e) { return e == 0; });
      trivial_[j * n_ + i] = trivial_[i * n_ + j] = triv;
      if (!triv) central_[i] = central_[j] = 0;
      std::vector<Term> w{{j, 1}};
      for (int k = j + 1; k < n_; ++k)
        if (c[k]) w.push_back({k, c[k]});
      conjword_[j * n_ + i] = std::move(w);
    }
}

Exps PcGroup::gen(int i, int e) const {
  Exps v(n_, 0);
  v[i] = mod(e, p_);
  return v;
}

namespace {

struct Frame {
  const Term* cur;
  const Term* end;
  const Term* beg;
  int reps;
  int g;    // >= 0: plain frame collecting g repeatedly
  int cnt;
};

}  // namespace

// Collection from the left.  To multiply v by g, the part of v above g
// that does not commute with everything is lifted off, conjugated by g
// and collected back in order.
void PcGroup::collect_word(Exps& v, const std::vector<Term>& w, int limit) const {
  if (w.empty()) return;
  std::vector<Frame> st;
  st.reserve(64);
  st.push_back({w.data(), w.data() + w.size(), w.data(), 1, -1, 0});
  auto push_word = [&](const std::vector<Term>& t, int reps) {
    if (!t.empty() && reps > 0) st.push_back({t.data(), t.data() + t.size(), t.data(), reps, -1, 0});
  };
  while (!st.empty()) {
    Frame& f = st.back();
    int g, cnt;
    if (f.g >= 0) {
      g = f.g;
      cnt = 1;
      if (--f.cnt == 0) st.pop_back();
    } else {
      if (f.cur == f.end) {
        if (--f.reps > 0) {
          f.cur = f.beg;
        } else {
          st.pop_back();
        }
        continue;
      }
      g = f.cur->gen;
      cnt = f.cur->exp;
      ++f.cur;
    }
    if (g >= limit) continue;
    if (cnt > 1) {
      // remaining copies wait until the first one is fully collected
      st.push_back({nullptr, nullptr, nullptr, 0, g, cnt - 1});
    }
    bool clean = true;
    for (int j = limit - 1; j > g; --j)
      if (v[j] && !central_[j] && !trivial_[j * n_ + g]) {
        clean = false;
        break;
      }
    bool overflow = v[g] + 1 == p_ && !powword_[g].empty();
    if (!clean || overflow) {
      // lifted generators are re-collected after g (and after g^p's word)
      for (int j = limit - 1; j > g; --j) {
        if (!v[j] || central_[j]) continue;
        if (trivial_[j * n_ + g])
          st.push_back({nullptr, nullptr, nullptr, 0, j, v[j]});
        else
          push_word(conjword_[j * n_ + g], v[j]);
        v[j] = 0;
      }
    }
    if (++v[g] == p_) {
      v[g] = 0;
      push_word(powword_[g], 1);
    }
  }
}

void PcGroup::collect(Exps& v, int g, int limit) const {
  std::vector<Term> w{{g, 1}};
  collect_word(v, w, limit);
}

void PcGroup::mul_into(Exps& v, const Exps& w, int limit) const {
  collect_word(v, to_terms(w), limit);
}

Exps PcGroup::mul(const Exps& a, const Exps& b, int limit) const {
  Exps v = a;
  for (int i = limit; i < n_; ++i) v[i] = 0;
  mul_into(v, b, limit);
  return v;
}

Exps PcGroup::inv(const Exps& a, int limit) const { return left_div(a, id(), limit); }

Exps PcGroup::left_div(const Exps& a, const Exps& b, int limit) const {
  // x with a x = b: fix the exponents of x one position at a time
  Exps cur = a, x = id();
  for (int i = limit; i < n_; ++i) cur[i] = 0;
  for (int i = 0; i < limit; ++i) {
    int e = mod(b[i] - cur[i], p_);
    if (!e) continue;
    x[i] = e;
    std::vector<Term> t{{i, e}};
    collect_word(cur, t, limit);
  }
  return x;
}

Exps PcGroup::pow(const Exps& a, long long e, int limit) const {
  Exps base = e < 0 ? inv(a, limit) : a;
  if (e < 0) e = -e;
  for (int i = limit; i < n_; ++i) base[i] = 0;
  Exps r = id();
  while (e > 0) {
    if (e & 1) mul_into(r, base, limit);
    e >>= 1;
    if (e) base = mul(base, base, limit);
  }
  return r;
}

Exps PcGroup::comm(const Exps& a, const Exps& b, int limit) const {
  // [a,b] = a^-1 b^-1 a b = (ba)^-1 (ab)
  return left_div(mul(b, a, limit), mul(a, b, limit), limit);
}

Exps PcGroup::conj(const Exps& a, const Exps& b) const { return left_div(b, mul(a, b), n_); }

bool PcGroup::is_id(const Exps& a) const {
  return std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

std::string PcGroup::consistency_failure() const {
  auto fail = [](const char* kind, int a, int b, int c) {
    std::ostringstream os;
    os << kind << " " << a << "," << b << "," << c;
    return os.str();
  };
  const int L = n_;
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        // (g_k g_j) g_i = g_k (g_j g_i)
        Exps l = gen(k);
        collect(l, j, L);
        collect(l, i, L);
        Exps r = gen(j);
        collect(r, i, L);
        Exps rr = gen(k);
        mul_into(rr, r, L);
        if (l != rr) return fail("kji", k, j, i);
      }
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < j; ++i) {
      // (g_j^p) g_i = g_j^{p-1} (g_j g_i)
      Exps l = pow_[j];
      collect(l, i, L);
      Exps w = gen(j);
      collect(w, i, L);
      Exps r = gen(j, p_ - 1);
      mul_into(r, w, L);
      if (l != r) return fail("jji", j, j, i);
      // g_j (g_i^p) = (g_j g_i) g_i^{p-1}
      Exps l2 = gen(j);
      mul_into(l2, pow_[i], L);
      Exps r2 = gen(j);
      for (int t = 0; t < p_; ++t) collect(r2, i, L);
      if (l2 != r2) return fail("jii", j, i, i);
    }
    // (g_j^p) g_j = g_j (g_j^p)
    Exps l = pow_[j];
    collect(l, j, L);
    Exps r = gen(j);
    mul_into(r, pow_[j], L);
    if (l != r) return fail("jjj", j, j, j);
  }
  return {};
}

int PcGroup::weight_prefix(int w) const {
  int k = 0;
  while (k < n_ && weights[k] <= w) ++k;
  return k;
}

int PcGroup::pclass() const {
  int c = 0;
  for (int w : weights) c = std::max(c, w);
  return c;
}

}  // namespace ptree
