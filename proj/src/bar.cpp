#include "dga/bar.hpp"

#include <algorithm>
#include <functional>

#include "dga/exactla.hpp"

namespace dga {

int bar_degree(const BarWord& w) {
  int b = 0;
  for (const auto& e : w) b += e.bd.n - 1;
  return b;
}

int bar_adams(const BarWord& w) {
  int r = 0;
  for (const auto& e : w) r += e.bd.r;
  return r;
}

Index BarSlice::dim(int b) const {
  auto it = levels.find(b);
  return it == levels.end() ? 0 : static_cast<Index>(it->second.words.size());
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index ja = 0; ja < a.cols(); ++ja)
    for (Index ia = 0; ia < a.rows(); ++ia) {
      if (a(ia, ja) == 0) continue;
      for (Index jb = 0; jb < b.cols(); ++jb)
        for (Index ib = 0; ib < b.rows(); ++ib)
          if (b(ib, jb) != 0) out(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
    }
  return out;
}

namespace {

int sgn(int parity) { return parity % 2 != 0 ? -1 : 1; }

RepSpace level_rep(const LevelwiseCdga& a, const BarLevel& lev, GroupKind group) {
  RepSpace r;
  r.group = group;
  Index n = static_cast<Index>(lev.words.size());
  r.e = Mat::Zero(n, n);
  r.f = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const BarWord& w = lev.words[static_cast<size_t>(i)];
    Weight wt{0, 0};
    for (const auto& e : w) {
      const Weight& lw = a.comp(e.bd)->rep.weights[static_cast<size_t>(e.i)];
      wt[0] += lw[0];
      wt[1] += lw[1];
    }
    r.weights.push_back(wt);
    /* the group operators are even, so they pass tensor factors without signs */
    for (size_t p = 0; p < w.size(); ++p) {
      const RepSpace& cr = a.comp(w[p].bd)->rep;
      for (Index i2 = 0; i2 < cr.dim(); ++i2) {
        if (cr.e(i2, w[p].i) != 0) {
          BarWord nw = w;
          nw[p].i = i2;
          r.e(lev.index.at(nw), i) += cr.e(i2, w[p].i);
        }
        if (cr.f(i2, w[p].i) != 0) {
          BarWord nw = w;
          nw[p].i = i2;
          r.f(lev.index.at(nw), i) += cr.f(i2, w[p].i);
        }
      }
    }
  }
  return r;
}

}  // namespace

BarSlice bar_slice(const LevelwiseCdga& a, int adams, int lo, int hi) {
  if (lo < 0 || hi < lo) throw AlgebraError("bar_slice: bad level range");
  if (!connectivity(a).adams_connected)
    throw NotAdamsConnected("bar_slice needs an Adams connected base");
  if (a.window.n_max < hi + 2 || a.window.r_max < adams)
    throw WindowTooSmall("bar_slice needs base degrees up to " + std::to_string(hi + 2) +
                         " and Adams degrees up to " + std::to_string(adams));

  BarSlice s;
  s.base = &a;
  s.adams = adams;
  s.lo = lo;
  s.hi = hi;
  for (int b = lo; b <= hi; ++b) s.levels[b];

  std::vector<BarEntry> letters;
  for (const auto& [bd, c] : a.comps)
    if (bd.n >= 1)
      for (Index i = 0; i < static_cast<Index>(c.basis.size()); ++i) letters.push_back({bd, i});

  /* every letter raises the Adams degree, so the recursion is finite */
  BarWord cur;
  std::function<void(int, int)> rec = [&](int bdeg, int rads) {
    if (bdeg > hi || rads > adams) return;
    if (rads == adams) {
      if (bdeg >= lo) s.levels[bdeg].words.push_back(cur);
      return;
    }
    for (const auto& l : letters) {
      cur.push_back(l);
      rec(bdeg + l.bd.n - 1, rads + l.bd.r);
      cur.pop_back();
    }
  };
  rec(0, 0);

  for (auto& [b, lev] : s.levels) {
    std::sort(lev.words.begin(), lev.words.end());
    for (Index i = 0; i < static_cast<Index>(lev.words.size()); ++i) lev.index[lev.words[static_cast<size_t>(i)]] = i;
    lev.rep = level_rep(a, lev, a.group);
  }

  for (int b = lo; b < hi; ++b) {
    const BarLevel& src = s.levels.at(b);
    const BarLevel& tgt = s.levels.at(b + 1);
    Mat m = Mat::Zero(static_cast<Index>(tgt.words.size()), static_cast<Index>(src.words.size()));
    for (Index i = 0; i < static_cast<Index>(src.words.size()); ++i) {
      const BarWord& w = src.words[static_cast<size_t>(i)];
      int spre = 0;
      for (size_t p = 0; p < w.size(); ++p) {
        Bidegree bd = w[p].bd;
        /* inner differential on one factor */
        Mat dm = a.diff_matrix(bd);
        for (Index t = 0; t < dm.rows(); ++t) {
          if (dm(t, w[p].i) == 0) continue;
          BarWord nw = w;
          nw[p] = BarEntry{{bd.n + 1, bd.r}, t};
          m(tgt.index.at(nw), i) += rat(-sgn(spre)) * dm(t, w[p].i);
        }
        /* merge with the next factor */
        if (p + 1 < w.size()) {
          Bidegree bd2 = w[p + 1].bd;
          int smid = spre + bd.n - 1;
          Vec prod = a.multiply(bd, Vec::Unit(a.dim(bd), w[p].i), bd2, Vec::Unit(a.dim(bd2), w[p + 1].i));
          for (Index t = 0; t < prod.size(); ++t) {
            if (prod(t) == 0) continue;
            BarWord nw;
            nw.reserve(w.size() - 1);
            for (size_t q = 0; q < w.size(); ++q) {
              if (q == p + 1) continue;
              nw.push_back(q == p ? BarEntry{{bd.n + bd2.n, bd.r + bd2.r}, t} : w[q]);
            }
            m(tgt.index.at(nw), i) += rat(sgn(smid)) * prod(t);
          }
        }
        spre += bd.n - 1;
      }
    }
    s.d[b] = std::move(m);
  }
  return s;
}

namespace {

void shuffle_rec(const BarWord& x, const BarWord& y, size_t ix, size_t iy,
                 const std::vector<int>& sx_suffix, BarWord& cur, int sign,
                 std::vector<std::pair<BarWord, int>>& out) {
  if (ix == x.size() && iy == y.size()) {
    out.push_back({cur, sign});
    return;
  }
  if (ix < x.size()) {
    cur.push_back(x[ix]);
    shuffle_rec(x, y, ix + 1, iy, sx_suffix, cur, sign, out);
    cur.pop_back();
  }
  if (iy < y.size()) {
    /* y[iy] crosses every factor of x that is still pending */
    int cross = (y[iy].bd.n - 1) * sx_suffix[ix];
    cur.push_back(y[iy]);
    shuffle_rec(x, y, ix, iy + 1, sx_suffix, cur, sign * sgn(cross), out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::pair<BarWord, int>> shuffle_words(const BarWord& x, const BarWord& y) {
  std::vector<int> suffix(x.size() + 1, 0);
  for (size_t k = x.size(); k-- > 0;) suffix[k] = suffix[k + 1] + (x[k].bd.n - 1);
  std::vector<std::pair<BarWord, int>> out;
  BarWord cur;
  shuffle_rec(x, y, 0, 0, suffix, cur, 1, out);
  return out;
}

std::pair<BarWord, int> reverse_word(const BarWord& w) {
  int cross = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      cross += (w[i].bd.n - 1) * (w[j].bd.n - 1);
  BarWord r(w.rbegin(), w.rend());
  return {r, sgn(cross)};
}

Index HopfTruncation::dim(int r) const {
  auto it = chi.find(r);
  return it == chi.end() ? 0 : it->second.kernel.cols();
}

HopfTruncation hopf_truncation(const LevelwiseCdga& a, int adams_max) {
  HopfTruncation h;
  h.base = &a;
  h.adams_max = adams_max;

  for (int r = 0; r <= adams_max; ++r) {
    BarSlice s = bar_slice(a, r, 0, 1);
    ChiPiece c;
    c.adams = r;
    /* no word has negative shifted degree, so cocycles are already classes */
    c.kernel = kernel_basis(s.d.at(0));
    c.rep = restrict_rep(s.levels.at(0).rep, c.kernel);
    c.obj = decompose(c.rep);
    h.chi[r] = std::move(c);
    h.slices[r] = std::move(s);
  }

  /* the antipode: reverse the factors and weight by (-1)^length, which is
     what makes it commute with the bar differential */
  for (int r = 0; r <= adams_max; ++r) {
    const BarLevel& lev = h.slices.at(r).levels.at(0);
    const Mat& k = h.chi.at(r).kernel;
    Mat rev = Mat::Zero(k.rows(), k.rows());
    for (Index i = 0; i < static_cast<Index>(lev.words.size()); ++i) {
      auto [w, sign] = reverse_word(lev.words[static_cast<size_t>(i)]);
      int len_sign = lev.words[static_cast<size_t>(i)].size() % 2 != 0 ? -1 : 1;
      rev(lev.index.at(w), i) = sign * len_sign;
    }
    h.invol[r] = solve_many(k, rev * k);
  }

  /* shuffle products of cocycles, written back in kernel coordinates */
  for (int r = 1; r <= adams_max; ++r)
    for (int s = 1; r + s <= adams_max; ++s) {
      const BarLevel& lr = h.slices.at(r).levels.at(0);
      const BarLevel& ls = h.slices.at(s).levels.at(0);
      const BarLevel& lt = h.slices.at(r + s).levels.at(0);
      const Mat& kr = h.chi.at(r).kernel;
      const Mat& ks = h.chi.at(s).kernel;
      Mat v = Mat::Zero(static_cast<Index>(lt.words.size()), kr.cols() * ks.cols());
      for (Index x = 0; x < kr.cols(); ++x)
        for (Index y = 0; y < ks.cols(); ++y) {
          Vec acc = Vec::Zero(static_cast<Index>(lt.words.size()));
          for (Index i = 0; i < kr.rows(); ++i) {
            if (kr(i, x) == 0) continue;
            for (Index j = 0; j < ks.rows(); ++j) {
              if (ks(j, y) == 0) continue;
              for (const auto& [word, sign] :
                   shuffle_words(lr.words[static_cast<size_t>(i)], ls.words[static_cast<size_t>(j)]))
                acc(lt.index.at(word)) += rat(sign) * kr(i, x) * ks(j, y);
            }
          }
          v.col(x * ks.cols() + y) = acc;
        }
      h.mult[{r, s}] = solve_many(h.chi.at(r + s).kernel, v);
    }

  /* deconcatenation, reduced to the interior splits */
  for (int r = 2; r <= adams_max; ++r)
    for (int s = 1; s < r; ++s) {
      int t = r - s;
      const BarLevel& lr = h.slices.at(r).levels.at(0);
      const BarLevel& ls = h.slices.at(s).levels.at(0);
      const BarLevel& lt = h.slices.at(t).levels.at(0);
      const Mat& kr = h.chi.at(r).kernel;
      Index ds = static_cast<Index>(ls.words.size());
      Index dt = static_cast<Index>(lt.words.size());
      Mat v = Mat::Zero(ds * dt, kr.cols());
      for (Index x = 0; x < kr.cols(); ++x)
        for (Index i = 0; i < kr.rows(); ++i) {
          if (kr(i, x) == 0) continue;
          const BarWord& w = lr.words[static_cast<size_t>(i)];
          for (size_t p = 0; p <= w.size(); ++p) {
            BarWord left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
            if (bar_adams(left) != s) continue;
            BarWord right(w.begin() + static_cast<std::ptrdiff_t>(p), w.end());
            v(ls.index.at(left) * dt + lt.index.at(right), x) += kr(i, x);
          }
        }
      h.comul[{r, s, t}] = solve_many(kron(h.chi.at(s).kernel, h.chi.at(t).kernel), v);
    }

  return h;
}

Index CoLiePiece::dim() const {
  Index d = 0;
  for (const auto& [l, m] : slots) d += dim_of(l);
  return d;
}

Index CoLieData::dim(int r) const {
  auto it = pieces.find(r);
  return it == pieces.end() ? 0 : it->second.dim();
}

namespace {

Mat cobracket_or_zero(const CoLieData& g, int r, int s, int t) {
  auto it = g.cobracket.find({r, s, t});
  if (it != g.cobracket.end()) return it->second;
  return Mat::Zero(g.dim(s) * g.dim(t), g.dim(r));
}

/* reindex x(x)y(x)z |-> z(x)x(x)y, with x in the first input factor */
Mat rotate_blocks(Index dx, Index dy, Index dz) {
  Mat m = Mat::Zero(dz * dx * dy, dx * dy * dz);
  for (Index ix = 0; ix < dx; ++ix)
    for (Index iy = 0; iy < dy; ++iy)
      for (Index iz = 0; iz < dz; ++iz)
        m(iz * dx * dy + ix * dy + iy, ix * dy * dz + iy * dz + iz) = 1;
  return m;
}

}  // namespace

CoLieData gamma(const HopfTruncation& h) {
  CoLieData g;
  g.group = h.base->group;
  g.adams_max = h.adams_max;

  std::map<int, Mat> basis;  // gamma basis blocks in chi coordinates
  std::map<int, Mat> proj;   // chi -> gamma, killing products

  for (int r = 1; r <= h.adams_max; ++r) {
    const ChiPiece& c = h.chi.at(r);
    Mat d(c.kernel.cols(), 0);
    for (int s = 1; s < r; ++s) d = hcat(d, h.mult.at({s, r - s}));
    Mat dim = image_basis(d);

    CoLiePiece piece;
    piece.obj = quotient_object(c.rep, dim);
    Mat b(c.kernel.cols(), 0);
    for (const auto& [l, mult] : piece.obj.mult) {
      Mat hk = hw_vectors(c.rep, highest_weight(l));
      Mat hs = hw_vectors_in(c.rep, highest_weight(l), dim);
      Mat cols = subquotient_basis(hs, hk);
      for (Index j = 0; j < cols.cols(); ++j) {
        Mat block = embed_copy(c.rep, l, cols.col(j));
        piece.slots.push_back({l, block});
        b = hcat(b, block);
      }
    }
    basis[r] = b;
    if (b.cols() + dim.cols() != c.kernel.cols())
      throw AlgebraError("gamma: complement does not fill the kernel");
    if (c.kernel.cols() == 0)
      proj[r] = Mat(0, 0);
    else
      proj[r] = inverse(hcat(b, dim)).topRows(b.cols());
    g.pieces[r] = std::move(piece);
  }

  for (int r = 2; r <= h.adams_max; ++r)
    for (int s = 1; s < r; ++s) {
      int t = r - s;
      Index ks = h.dim(s), kt = h.dim(t);
      Mat v = h.comul.at({r, s, t}) * basis.at(r);
      Mat w = h.comul.at({r, t, s}) * basis.at(r);
      /* swap the tensor factors, then reverse both */
      Mat swap = Mat::Zero(ks * kt, kt * ks);
      for (Index is = 0; is < ks; ++is)
        for (Index it = 0; it < kt; ++it) swap(is * kt + it, it * ks + is) = 1;
      Mat tau = kron(h.invol.at(s), h.invol.at(t)) * swap * w;
      g.cobracket[{r, s, t}] = kron(proj.at(s), proj.at(t)) * (v - tau);
    }

  return g;
}

bool co_jacobi_ok(const CoLieData& g) {
  for (int r = 3; r <= g.adams_max; ++r)
    for (int s = 1; s < r; ++s)
      for (int t = 1; s + t < r; ++t) {
        int u = r - s - t;
        Index ds = g.dim(s), dt = g.dim(t), du = g.dim(u);
        if (ds * dt * du == 0 || g.dim(r) == 0) continue;
        auto twostep = [&](int a, int b, int c) -> Mat {
          /* component of (cobracket x id) cobracket in gamma_a (x) gamma_b (x) gamma_c */
          return kron(cobracket_or_zero(g, a + b, a, b), Mat::Identity(g.dim(c), g.dim(c))) *
                 cobracket_or_zero(g, r, a + b, c);
        };
        Mat total = twostep(s, t, u) + rotate_blocks(dt, du, ds) * twostep(t, u, s) +
                    rotate_blocks(dt, du, ds) * rotate_blocks(du, ds, dt) * twostep(u, s, t);
        if (!is_zero(total)) return false;
      }
  return true;
}

FreeCdgaPresentation sullivan_cdga(const CoLieData& g) {
  if (!co_jacobi_ok(g)) throw CoJacobiViolation("cobracket fails the co-Jacobi identity");

  FreeCdgaPresentation p;
  p.group = g.group;
  std::map<int, std::vector<std::pair<int, int>>> coord_var;  // gamma coordinate -> (gen, component)
  std::map<int, std::vector<Index>> slot_offset;
  for (const auto& [r, piece] : g.pieces) {
    Index off = 0;
    for (size_t j = 0; j < piece.slots.size(); ++j) {
      const IrrLabel& l = piece.slots[j].first;
      int gi = static_cast<int>(p.gens.size());
      p.gens.push_back({"g" + std::to_string(r) + "_" + std::to_string(j), 1, l});
      slot_offset[r].push_back(off);
      for (int c = 0; c < dim_of(l); ++c) coord_var[r].push_back({gi, c});
      off += dim_of(l);
    }
  }

  LevelwiseCdga a2 = expand_free(p, Window{0, 2, 0, std::max(g.adams_max, 0)});
  auto unit_of = [&](int r, int coord) {
    auto [gi, c] = coord_var.at(r)[static_cast<size_t>(coord)];
    Monomial m{{{gi, c}, 1}};
    const Component* comp = a2.comp({1, r});
    Vec e = Vec::Zero(a2.dim({1, r}));
    e(comp->index.at(m)) = 1;
    return e;
  };

  for (const auto& [r, piece] : g.pieces) {
    for (size_t j = 0; j < piece.slots.size(); ++j) {
      const IrrLabel& l = piece.slots[j].first;
      int gi = p.find("g" + std::to_string(r) + "_" + std::to_string(j));
      if (a2.dim({2, r}) == 0) continue;
      Vec total = Vec::Zero(a2.dim({2, r}));
      for (int s = 1; s < r; ++s) {
        int t = r - s;
        auto it = g.cobracket.find({r, s, t});
        if (it == g.cobracket.end() || it->second.size() == 0) continue;
        Vec dv = it->second.col(slot_offset.at(r)[j]);  // cobracket of the highest weight line
        Index dt = g.dim(t);
        for (Index idx = 0; idx < dv.size(); ++idx) {
          if (dv(idx) == 0) continue;
          total += dv(idx) * a2.multiply({1, s}, unit_of(s, static_cast<int>(idx / dt)), {1, t},
                                         unit_of(t, static_cast<int>(idx % dt)));
        }
      }
      total *= rat(1, 2);
      if (!is_zero(total)) p.diff[gi] = express_in_terms(a2, {2, r}, l, total);
    }
  }
  return p;
}

}  // namespace dga
