#pragma once

#include "m0n/boundary.hpp"
#include "m0n/divisor.hpp"
#include "m0n/linalg.hpp"
#include "m0n/rational.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace m0n {

/// dim N^1(M̄_{0,n}) = 2^{n-1} - C(n,2) - 1.
inline long picard_dimension(int n) { return (1L << (n - 1)) - static_cast<long>(n) * (n - 1) / 2 - 1; }

/// Linear relations among boundary classes together with their reduced echelon form.
///
/// Columns are the canonical boundary classes in pivot order (size, then lexicographic).
class RelationBasis {
public:
    RelationBasis(int n, std::vector<DivisorClass> relations, Echelon rref)
        : n_(n), boundaries_(all_boundaries(n)), relations_(std::move(relations)), rref_(std::move(rref)) {
        for (std::size_t i = 0; i < boundaries_.size(); ++i) column_.emplace(boundaries_[i], i);
    }

    int n() const { return n_; }
    const std::vector<BoundaryIndex>& boundaries() const { return boundaries_; }
    const std::vector<DivisorClass>& relations() const { return relations_; }
    const Echelon& rref() const { return rref_; }
    std::size_t rank() const { return rref_.rank(); }
    std::size_t quotient_dimension() const { return boundaries_.size() - rref_.rank(); }

    std::size_t column(const BoundaryIndex& b) const {
        require_same_n(n_, b.n());
        return column_.at(b);
    }

    /// Columns that survive reduction: the coordinates of the quotient.
    std::vector<std::size_t> free_columns() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < boundaries_.size(); ++c)
            if (!rref_.is_pivot(c)) out.push_back(c);
        return out;
    }

    RationalVector to_vector(const DivisorClass& d) const {
        require_same_n(n_, d.n());
        RationalVector v(boundaries_.size());
        for (const auto& [b, c] : d.boundary_coeffs()) v[column(b)] = c;
        return v;
    }

    DivisorClass from_vector(const RationalVector& v) const {
        DivisorClass d(n_);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) d.add(boundaries_[c], v[c]);
        return d;
    }

private:
    int n_;
    std::vector<BoundaryIndex> boundaries_;
    std::unordered_map<BoundaryIndex, std::size_t> column_;
    std::vector<DivisorClass> relations_;
    Echelon rref_;
};

namespace detail {

/// Sum of canonical classes separating {a,b} from {c,d}, as a dense vector.
inline void add_separating(int n, const std::vector<BoundaryIndex>& cols, int a, int b, int c, int d,
                           const Rational& sign, RationalVector& out) {
    const PointMask inside = mask_of({a, b});
    const PointMask outside = mask_of({c, d});
    (void)n;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        for (PointMask side : {cols[k].mask(), cols[k].complement()}) {
            if ((side & inside) == inside && (side & outside) == 0) {
                out[k] += sign;
                break;
            }
        }
    }
}

}  // namespace detail

/// Keel relations for M̄_{0,n}: for distinct i,j,k,l the classes separating {i,j}|{k,l}
/// sum to the same class as those separating {i,k}|{j,l}.
///
/// Every ordered quadruple is enumerated and identical vectors are dropped.
inline RelationBasis keel_relations(int n) {
    check_point_count(n);
    const auto cols = all_boundaries(n);
    std::set<RationalVector> seen;
    std::vector<DivisorClass> relations;
    Echelon rref(cols.size());
    auto to_class = [&](const RationalVector& v) {
        DivisorClass d(n);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) d.add(cols[c], v[c]);
        return d;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    RationalVector v(cols.size());
                    detail::add_separating(n, cols, i, j, k, l, Rational(1), v);
                    detail::add_separating(n, cols, i, k, j, l, Rational(-1), v);
                    if (!seen.insert(v).second) continue;
                    relations.push_back(to_class(v));
                    rref.insert(std::move(v));
                }
    return RelationBasis(n, std::move(relations), std::move(rref));
}

namespace detail {

inline void write_sparse(std::ostream& os, const RationalVector& v) {
    std::size_t nz = 0;
    for (const auto& x : v) nz += (x != 0);
    os << nz;
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) os << ' ' << c << ':' << to_string(v[c]);
    os << '\n';
}

inline RationalVector read_sparse(std::istream& is, std::size_t cols) {
    std::size_t nz = 0;
    if (!(is >> nz)) throw std::runtime_error("truncated relation cache");
    RationalVector v(cols);
    for (std::size_t k = 0; k < nz; ++k) {
        std::string tok;
        is >> tok;
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::runtime_error("malformed relation cache entry");
        std::size_t c = std::stoul(tok.substr(0, colon));
        if (c >= cols) throw std::runtime_error("relation cache column out of range");
        v[c] = parse_rational(tok.substr(colon + 1));
    }
    return v;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, int n) {
    return dir / ("keel_n" + std::to_string(n) + ".txt");
}

inline void save_basis(const std::filesystem::path& file, const RelationBasis& basis) {
    std::filesystem::create_directories(file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        os << "m0n-keel-cache 1\n" << basis.n() << ' ' << basis.boundaries().size() << '\n';
        os << basis.relations().size() << '\n';
        for (const auto& r : basis.relations()) write_sparse(os, basis.to_vector(r));
        os << basis.rref().rank() << '\n';
        for (const auto& r : basis.rref().rows()) write_sparse(os, r);
    }
    std::filesystem::rename(tmp, file);
}

inline std::unique_ptr<RelationBasis> load_basis(const std::filesystem::path& file, int n) {
    std::ifstream is(file);
    if (!is) return nullptr;
    std::string magic;
    int version = 0, file_n = 0;
    std::size_t cols = 0;
    is >> magic >> version >> file_n >> cols;
    const auto expect_cols = all_boundaries(n).size();
    if (magic != "m0n-keel-cache" || version != 1 || file_n != n || cols != expect_cols) return nullptr;
    std::size_t count = 0;
    is >> count;
    std::vector<RationalVector> rel_vecs;
    for (std::size_t i = 0; i < count; ++i) rel_vecs.push_back(read_sparse(is, cols));
    std::size_t rank = 0;
    is >> rank;
    Echelon rref(cols);
    for (std::size_t i = 0; i < rank; ++i) rref.insert(read_sparse(is, cols));
    if (!is || rref.rank() != rank) return nullptr;
    const auto boundaries = all_boundaries(n);
    std::vector<DivisorClass> relations;
    for (const auto& v : rel_vecs) {
        DivisorClass d(n);
        for (std::size_t c = 0; c < cols; ++c)
            if (v[c] != 0) d.add(boundaries[c], v[c]);
        relations.push_back(std::move(d));
    }
    return std::make_unique<RelationBasis>(n, std::move(relations), std::move(rref));
}

}  // namespace detail

/// Process-wide cached relation basis for n; safe for concurrent readers.
///
/// When M0N_CACHE_DIR is set the basis is also read from / written to that directory.
inline std::shared_ptr<const RelationBasis> relation_basis(int n) {
    static std::shared_mutex mutex;
    static std::map<int, std::shared_ptr<const RelationBasis>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    check_point_count(n);
    std::shared_ptr<const RelationBasis> built;
    const char* dir = std::getenv("M0N_CACHE_DIR");
    if (dir != nullptr && *dir != '\0') {
        auto file = detail::cache_file(dir, n);
        try {
            if (auto loaded = detail::load_basis(file, n);
                loaded && loaded->quotient_dimension() == static_cast<std::size_t>(picard_dimension(n)))
                built = std::move(loaded);
        } catch (const std::exception&) {
            built = nullptr;
        }
        if (!built) {
            auto fresh = std::make_shared<const RelationBasis>(keel_relations(n));
            try {
                detail::save_basis(file, *fresh);
            } catch (const std::exception&) {
                // unwritable cache directory: keep the in-memory copy only
            }
            built = std::move(fresh);
        }
    } else {
        built = std::make_shared<const RelationBasis>(keel_relations(n));
    }
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(n, std::move(built));
    return it->second;
}

/// Deterministic representative of D modulo the Keel relations; psi coordinates pass through.
inline DivisorClass normal_form(const DivisorClass& d) {
    if (d.n() == 0) return d;
    auto basis = relation_basis(d.n());
    RationalVector v = basis->to_vector(d);
    basis->rref().reduce(v);
    DivisorClass out = basis->from_vector(v);
    for (const auto& [i, c] : d.psi_coeffs()) out.add_psi(i, c);
    return out;
}

/// Equality in N^1 for boundary coordinates; individual psi coordinates are compared as is.
inline bool class_equal(const DivisorClass& a, const DivisorClass& b) {
    require_same_n(a.n(), b.n());
    DivisorClass diff = a - b;
    if (diff.has_psi()) return false;
    return normal_form(diff).is_zero();
}

}  // namespace m0n
