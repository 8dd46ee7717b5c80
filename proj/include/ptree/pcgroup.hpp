// Finite p-groups given by consistent power-commutator presentations
// in which every relative order equals p.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptree {

using Exps = std::vector<int>;

struct Term {
  int gen;
  int exp;
};

struct Definition {
  enum Kind { none, power, comm } kind = none;
  int j = -1;  // power: g_j^p, comm: [g_j, g_i]
  int i = -1;
};

class PcGroup {
 public:
  PcGroup() = default;
  PcGroup(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }

  // relations: g_i^p = rhs, [g_j, g_i] = rhs for j > i
  void set_power(int i, const Exps& rhs);
  void set_comm(int j, int i, const Exps& rhs);
  const Exps& power(int i) const { return pow_[i]; }
  const Exps& comm_rel(int j, int i) const { return comm_[j * n_ + i]; }

  // builds the collector tables; must be called after the relations are set
  void finalize();

  // generator weights along the lower exponent-p central series and
  // definitions of the non-weight-1 generators; "standard" means the
  // weights are adapted and every definition holds exactly
  std::vector<int> weights;
  std::vector<Definition> defs;
  bool standard = false;

  Exps id() const { return Exps(n_, 0); }
  Exps gen(int i, int e = 1) const;

  // v := v * g_g, ignoring generators of index >= limit
  void collect(Exps& v, int g, int limit) const;
  void collect_word(Exps& v, const std::vector<Term>& w, int limit) const;
  void mul_into(Exps& v, const Exps& w, int limit) const;

  Exps mul(const Exps& a, const Exps& b) const { return mul(a, b, n_); }
  Exps mul(const Exps& a, const Exps& b, int limit) const;
  Exps inv(const Exps& a) const { return inv(a, n_); }
  Exps inv(const Exps& a, int limit) const;
  // the x with a x = b
  Exps left_div(const Exps& a, const Exps& b, int limit) const;
  Exps pow(const Exps& a, long long e) const { return pow(a, e, n_); }
  Exps pow(const Exps& a, long long e, int limit) const;
  Exps comm(const Exps& a, const Exps& b) const { return comm(a, b, n_); }
  Exps comm(const Exps& a, const Exps& b, int limit) const;
  Exps conj(const Exps& a, const Exps& b) const;

  bool is_id(const Exps& a) const;

  // standard consistency checks for presentations with all relative
  // orders p; returns the first failing triple as text, empty if none
  std::string consistency_failure() const;
  bool consistent() const { return consistency_failure().empty(); }

  // index of the first generator of weight > w (the prefix g_0..g_{k-1}
  // presents G / P_w when the presentation is standard)
  int weight_prefix(int w) const;
  int pclass() const;

  bool operator==(const PcGroup& o) const {
    return p_ == o.p_ && n_ == o.n_ && pow_ == o.pow_ && comm_ == o.comm_;
  }

 private:
  int p_ = 0, n_ = 0;
  std::vector<Exps> pow_;
  std::vector<Exps> comm_;
  std::vector<std::vector<Term>> powword_;
  std::vector<std::vector<Term>> conjword_;  // g_j^{g_i} = g_j [g_j,g_i]
  std::vector<char> trivial_;                // [g_j,g_i] = 1
  std::vector<char> central_;
};

std::vector<Term> to_terms(const Exps& v);
int mod(long long a, int p);
int inv_mod(int a, int p);

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ptree
