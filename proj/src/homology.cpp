#include "trimani/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace trimani {

template <class Scalar>
void SparseMatrix<Scalar>::set(std::size_t r, std::size_t c, Scalar value) {
  auto& row = entries.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                             [](const auto& e, std::uint32_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value == 0) {
      row.erase(it);
    } else {
      it->second = std::move(value);
    }
  } else if (value != 0) {
    row.insert(it, {static_cast<std::uint32_t>(c), std::move(value)});
  }
}

template <class Scalar>
Scalar SparseMatrix<Scalar>::get(std::size_t r, std::size_t c) const {
  const auto& row = entries.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                             [](const auto& e, std::uint32_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar(0);
}

template <class Scalar>
std::size_t SparseMatrix<Scalar>::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : entries) n += row.size();
  return n;
}

template struct SparseMatrix<Integer>;
template struct SparseMatrix<std::int64_t>;

namespace {

using Row = std::vector<std::pair<std::uint32_t, Integer>>;

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// row_target -= factor * row_pivot, both sorted by column
void subtract_row(Row& target, const Row& pivot, const Integer& factor, std::vector<std::uint32_t>* new_columns) {
  Row out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || pivot[j].first < target[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      if (new_columns) new_columns->push_back(pivot[j].first);
      ++j;
    } else {
      Integer v = target[i].second - factor * pivot[j].second;
      if (v != 0) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

// Dense Smith reduction of a small block; appends nonzero invariant factors.
void dense_smith(std::vector<std::vector<Integer>> a, std::vector<Integer>& diag) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::size_t t = 0;
  while (t < m && t < n) {
    // pivot on the smallest nonzero absolute value
    std::size_t pr = m;
    std::size_t pc = n;
    Integer best = 0;
    for (std::size_t r = t; r < m; ++r) {
      for (std::size_t c = t; c < n; ++c) {
        if (a[r][c] == 0) continue;
        Integer v = abs_value(a[r][c]);
        if (pr == m || v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (a[r][t] == 0) continue;
        Integer q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < n; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (a[t][c] == 0) continue;
        Integer q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < m; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (auto& row : a) std::swap(row[t], row[c]);
          clean = false;
        }
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      for (std::size_t r = t + 1; r < m && clean; ++r) {
        for (std::size_t c = t + 1; c < n; ++c) {
          if (a[r][c] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[r][k];
            clean = false;
            break;
          }
        }
      }
    }
    diag.push_back(abs_value(a[t][t]));
    ++t;
  }
}

template <class Scalar>
Row to_integer_row(const std::vector<std::pair<std::uint32_t, Scalar>>& row) {
  Row out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, Integer(v));
  return out;
}

}  // namespace

template <class Scalar>
SmithResult smith_normal_form(SparseMatrix<Scalar> m) {
  std::vector<Row> rows;
  rows.reserve(m.rows);
  for (const auto& r : m.entries) rows.push_back(to_integer_row(r));

  std::vector<std::vector<std::uint32_t>> col_rows(m.cols);
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : rows[r]) col_rows[e.first].push_back(r);
  }
  std::vector<char> row_done(m.rows, 0);
  std::vector<char> col_done(m.cols, 0);

  auto entry = [&](std::uint32_t r, std::uint32_t c) -> const Integer* {
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  };

  SmithResult out;
  std::vector<Integer> units;
  // Columns in order of initial density; sparse unit pivots keep fill-in low.
  std::vector<std::uint32_t> order(m.cols);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return col_rows[a].size() < col_rows[b].size(); });

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t c : order) {
      if (col_done[c]) continue;
      // live rows with a nonzero in column c
      std::vector<std::uint32_t> live;
      for (std::uint32_t r : col_rows[c]) {
        if (!row_done[r] && entry(r, c) != nullptr) live.push_back(r);
      }
      std::sort(live.begin(), live.end());
      live.erase(std::unique(live.begin(), live.end()), live.end());
      col_rows[c] = live;
      if (live.empty()) {
        col_done[c] = 1;
        continue;
      }
      std::uint32_t pivot = UINT32_MAX;
      for (std::uint32_t r : live) {
        const Integer* v = entry(r, c);
        if (*v == 1 || *v == -1) {
          if (pivot == UINT32_MAX || rows[r].size() < rows[pivot].size()) pivot = r;
        }
      }
      if (pivot == UINT32_MAX) continue;
      const Integer unit = *entry(pivot, c);
      for (std::uint32_t r : live) {
        if (r == pivot) continue;
        const Integer factor = *entry(r, c) * unit;
        std::vector<std::uint32_t> fresh;
        subtract_row(rows[r], rows[pivot], factor, &fresh);
        for (std::uint32_t nc : fresh) col_rows[nc].push_back(r);
      }
      // the pivot row can now be cleared by column operations
      row_done[pivot] = 1;
      col_done[c] = 1;
      rows[pivot].clear();
      out.diagonal.emplace_back(1);
      progress = true;
    }
  }

  // whatever survives has no unit entries
  std::vector<std::uint32_t> live_rows;
  std::vector<std::uint32_t> live_cols;
  std::unordered_map<std::uint32_t, std::size_t> col_pos;
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (row_done[r] || rows[r].empty()) continue;
    live_rows.push_back(r);
    for (const auto& e : rows[r]) {
      if (!col_pos.contains(e.first)) {
        col_pos.emplace(e.first, live_cols.size());
        live_cols.push_back(e.first);
      }
    }
  }
  if (!live_rows.empty()) {
    std::vector<std::vector<Integer>> dense(live_rows.size(), std::vector<Integer>(live_cols.size()));
    for (std::size_t i = 0; i < live_rows.size(); ++i) {
      for (const auto& e : rows[live_rows[i]]) dense[i][col_pos[e.first]] = e.second;
    }
    std::vector<Integer> tail;
    dense_smith(std::move(dense), tail);
    std::sort(tail.begin(), tail.end());
    for (auto& x : tail) out.diagonal.push_back(std::move(x));
  }
  out.rank = out.diagonal.size();
  return out;
}

template SmithResult smith_normal_form<Integer>(SparseMatrix<Integer>);
template SmithResult smith_normal_form<std::int64_t>(SparseMatrix<std::int64_t>);

namespace {

std::vector<std::vector<Vertex>> faces_of_dim(const Complex& k, int dim) {
  std::vector<std::vector<Vertex>> out;
  switch (dim) {
    case 0:
      for (Vertex v = 1; v <= k.vertex_count(); ++v) out.push_back({v});
      break;
    case 1:
      for (const auto& e : k.edges()) out.push_back({e[0], e[1]});
      break;
    case 2:
      for (const auto& t : k.triangles()) out.push_back({t[0], t[1], t[2]});
      break;
    case 3:
      for (const auto& f : k.facets()) out.push_back({f[0], f[1], f[2], f[3]});
      break;
    default:
      throw Error(Errc::InvalidArgument, "face dimension out of range");
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

IntegerMatrix boundary_matrix(const Complex& k, int dim) {
  if (dim < 1 || dim > 3) throw Error(Errc::InvalidArgument, "boundary dimension must be 1, 2 or 3");
  const auto lower = faces_of_dim(k, dim - 1);
  const auto upper = faces_of_dim(k, dim);
  std::map<std::vector<Vertex>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], i);
  IntegerMatrix m(lower.size(), upper.size());
  for (std::uint32_t c = 0; c < upper.size(); ++c) {
    for (std::size_t i = 0; i < upper[c].size(); ++i) {
      std::vector<Vertex> face = upper[c];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      m.set(index.at(face), c, i % 2 == 0 ? Integer(1) : Integer(-1));
    }
  }
  return m;
}

namespace {

struct ChainData {
  std::array<std::int64_t, 4> counts{};
  // SNF diagonals of boundary maps in dimensions 1..3 (index 0 unused)
  std::array<std::vector<Integer>, 4> diagonals;
};

ChainData chain_data(const Complex& k) {
  ChainData d;
  const auto f = k.f_vector();
  for (int i = 0; i < 4; ++i) d.counts[i] = f[i];
  for (int dim = 1; dim <= 3; ++dim) d.diagonals[dim] = smith_normal_form(boundary_matrix(k, dim)).diagonal;
  return d;
}

std::string group_string(const HomologyGroup& g) {
  std::vector<std::string> parts;
  if (g.betti == 1) parts.emplace_back("Z");
  if (g.betti > 1) parts.push_back("Z^" + std::to_string(g.betti));
  for (std::size_t i = 0; i < g.torsion.size();) {
    std::size_t j = i;
    while (j < g.torsion.size() && g.torsion[j] == g.torsion[i]) ++j;
    std::string term = "Z_" + g.torsion[i].str();
    if (j - i > 1) term += "^" + std::to_string(j - i);
    parts.push_back(term);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t()");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t()");
  return std::string(s.substr(b, e - b + 1));
}

HomologyGroup parse_group(const std::string& text) {
  HomologyGroup g;
  if (text == "0") return g;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    std::int64_t power = 1;
    if (auto caret = term.find('^'); caret != std::string::npos) {
      power = std::stoll(term.substr(caret + 1));
      term = term.substr(0, caret);
    }
    if (term == "Z") {
      g.betti += power;
    } else if (term.rfind("Z_", 0) == 0) {
      const Integer order(term.substr(2));
      if (order < 2) throw Error(Errc::ParseError, "torsion order below 2");
      for (std::int64_t i = 0; i < power; ++i) g.torsion.push_back(order);
    } else {
      throw Error(Errc::ParseError, "unrecognized homology term '" + term + "'");
    }
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

}  // namespace

std::string HomologyProfile::to_string(std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += separator;
    out += group_string(groups[i]);
  }
  return out;
}

HomologyProfile HomologyProfile::parse(std::string_view text) {
  HomologyProfile p;
  std::string body = trim(text);
  std::stringstream ss(body);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 4) throw Error(Errc::ParseError, "more than four homology groups");
    p.groups[i++] = parse_group(trim(part));
  }
  if (i != 4) throw Error(Errc::ParseError, "expected four homology groups");
  return p;
}

HomologyProfile integral_homology(const Complex& k) {
  const ChainData d = chain_data(k);
  std::array<std::int64_t, 5> rank{};  // rank[i] = rank of the boundary map out of dimension i
  for (int dim = 1; dim <= 3; ++dim) rank[dim] = static_cast<std::int64_t>(d.diagonals[dim].size());
  HomologyProfile p;
  for (int i = 0; i < 4; ++i) {
    p.groups[i].betti = d.counts[i] - rank[i] - rank[i + 1];
    if (i + 1 <= 3) {
      for (const auto& x : d.diagonals[i + 1]) {
        if (x > 1) p.groups[i].torsion.push_back(x);
      }
    }
  }
  return p;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

std::array<std::int64_t, 4> betti_mod_p(const Complex& k, int p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  const ChainData d = chain_data(k);
  std::array<std::int64_t, 5> rank{};
  for (int dim = 1; dim <= 3; ++dim) {
    for (const auto& x : d.diagonals[dim]) {
      if (x % p != 0) ++rank[dim];
    }
  }
  std::array<std::int64_t, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = d.counts[i] - rank[i] - rank[i + 1];
  return out;
}

bool orientable(const Complex& k) {
  const auto facets = k.facets();
  if (facets.empty()) return true;
  // triangle -> (facet index, omitted position)
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, int>>> incidence;
  for (std::uint32_t i = 0; i < facets.size(); ++i) {
    const auto& f = facets[i];
    for (int omit = 0; omit < 4; ++omit) {
      Triangle t{};
      int n = 0;
      for (int j = 0; j < 4; ++j) {
        if (j != omit) t[n++] = f[j];
      }
      incidence[pack_triangle(t[0], t[1], t[2])].emplace_back(i, omit);
    }
  }
  std::vector<int> sign(facets.size(), 0);
  for (std::uint32_t start = 0; start < facets.size(); ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    std::deque<std::uint32_t> queue{start};
    while (!queue.empty()) {
      const std::uint32_t i = queue.front();
      queue.pop_front();
      const auto& f = facets[i];
      for (int omit = 0; omit < 4; ++omit) {
        Triangle t{};
        int n = 0;
        for (int j = 0; j < 4; ++j) {
          if (j != omit) t[n++] = f[j];
        }
        for (const auto& [other, other_omit] : incidence[pack_triangle(t[0], t[1], t[2])]) {
          if (other == i) continue;
          // induced orientations on the shared triangle must be opposite
          const int want = -sign[i] * (((omit + other_omit) % 2 == 0) ? 1 : -1);
          if (sign[other] == 0) {
            sign[other] = want;
            queue.push_back(other);
          } else if (sign[other] != want) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace trimani
