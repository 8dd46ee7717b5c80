// Dense linear algebra over F_p.
#pragma once

#include <vector>

#include "ptree/pcgroup.hpp"

namespace ptree {

using Row = std::vector<int>;

// Incremental row echelon form that remembers how every stored row was
// obtained from the inserted ones.
class Echelon {
 public:
  Echelon(int p, int ncols) : p_(p), ncols_(ncols) {}

  // returns true if v was independent of the rows inserted so far
  bool add(const Row& v) {
    Row r = v;
    Row comb(inserted_ + 1, 0);
    comb[inserted_] = 1;
    ++inserted_;
    for (auto& c : combs_) c.resize(inserted_, 0);
    reduce_tracked(r, comb);
    int piv = -1;
    for (int j = 0; j < ncols_; ++j)
      if (r[j]) {
        piv = j;
        break;
      }
    if (piv < 0) {
      dependent_.push_back(comb);
      return false;
    }
    int s = inv_mod(r[piv], p_);
    for (auto& e : r) e = e * s % p_;
    for (auto& e : comb) e = e * s % p_;
    rows_.push_back(r);
    combs_.push_back(comb);
    pivots_.push_back(piv);
    return true;
  }

  // v minus its projection onto the stored rows (pivot columns cleared)
  Row reduce(const Row& v) const {
    Row r = v;
    Row dummy;
    reduce_tracked(r, dummy);
    return r;
  }

  // coefficients c (over inserted rows) with sum c_k v_k = target, or empty
  std::vector<int> solve(const Row& target) const {
    Row r = target;
    Row comb(inserted_, 0);
    for (size_t k = 0; k < rows_.size(); ++k) {
      int e = r[pivots_[k]];
      if (!e) continue;
      for (int j = 0; j < ncols_; ++j) r[j] = mod(r[j] - e * rows_[k][j], p_);
      for (int j = 0; j < inserted_; ++j) comb[j] = mod(comb[j] + e * combs_[k][j], p_);
    }
    for (int e : r)
      if (e) return {};
    return comb;
  }

  int rank() const { return int(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  int ncols() const { return ncols_; }
  // basis of the relations among the inserted rows
  std::vector<Row> dependencies() const {
    auto d = dependent_;
    for (auto& r : d) r.resize(inserted_, 0);
    return d;
  }

  // reduced form: every pivot column is zero outside its own row
  void make_reduced() {
    for (size_t k = 0; k < rows_.size(); ++k)
      for (size_t m = 0; m < rows_.size(); ++m) {
        if (m == k) continue;
        int e = rows_[m][pivots_[k]];
        if (!e) continue;
        for (int j = 0; j < ncols_; ++j) rows_[m][j] = mod(rows_[m][j] - e * rows_[k][j], p_);
        for (size_t j = 0; j < combs_[m].size(); ++j)
          combs_[m][j] = mod(combs_[m][j] - e * combs_[k][j], p_);
      }
  }

 private:
  void reduce_tracked(Row& r, Row& comb) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      int e = r[pivots_[k]];
      if (!e) continue;
      for (int j = 0; j < ncols_; ++j) r[j] = mod(r[j] - e * rows_[k][j], p_);
      if (!comb.empty())
        for (size_t j = 0; j < combs_[k].size(); ++j) comb[j] = mod(comb[j] - e * combs_[k][j], p_);
    }
  }

  int p_, ncols_;
  int inserted_ = 0;
  std::vector<Row> rows_, combs_, dependent_;
  std::vector<int> pivots_;
};

}  // namespace ptree
