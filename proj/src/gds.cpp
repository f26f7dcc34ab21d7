#include "lipeq/gds.hpp"

#include "lipeq/errors.hpp"

#include <algorithm>
#include <tuple>

namespace lipeq {

namespace {

std::string word_string(const MapWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ".";
        out += std::to_string(w[i] + 1);
    }
    return out.empty() ? "()" : out;
}

bool edge_order(const GdsEdge& a, const GdsEdge& b) {
    return std::tie(a.from, a.to, a.via) < std::tie(b.from, b.to, b.via);
}

int resolution(const PieceSpec& piece) {
    int r = static_cast<int>(piece.base.size());
    for (const auto& u : piece.minus) r = std::max(r, static_cast<int>(u.size()));
    return r;
}

}  // namespace

std::vector<int> GraphDirectedSystem::out_edge_indices(int vertex) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].from == vertex) out.push_back(static_cast<int>(i));
    return out;
}

int GraphDirectedSystem::out_degree(int vertex) const {
    return static_cast<int>(out_edge_indices(vertex).size());
}

EquationMismatchError::EquationMismatchError(EquationWitness w, int depth)
    : std::runtime_error("edge equation fails at vertex " + std::to_string(w.vertex + 1) +
                         " (depth " + std::to_string(depth) + "): cover box " +
                         (w.lhs_only ? "missing from" : "extraneous in") + " the mapped union"),
      witness_(std::move(w)) {}

DisjointnessError::DisjointnessError(PartitionCheck c, int depth)
    : std::runtime_error(std::string("piece covers ") +
                         (c.disjoint ? "do not exhaust the attractor cover"
                                     : "intersect pairwise") +
                         " at depth " + std::to_string(depth)),
      check_(std::move(c)) {}

std::vector<Box> piece_cover(const HomogeneousIFS& ifs, const PieceSpec& piece, int depth) {
    const int ext = depth - static_cast<int>(piece.base.size());
    if (ext < 0)
        throw std::invalid_argument("cover depth " + std::to_string(depth) +
                                    " below base word length for " + word_string(piece.base));
    std::vector<Box> minus_boxes;
    minus_boxes.reserve(piece.minus.size());
    for (const auto& u : piece.minus) minus_boxes.push_back(ifs.cylinder(u));

    const Box unit = Box::unit(ifs.dim());
    const int m = ifs.map_count();
    std::vector<Box> out;

    auto excluded = [&](const Box& b) {
        for (const auto& mb : minus_boxes)
            if (mb.contains(b)) return true;
        return false;
    };

    // DFS over word extensions; a subtree whose box is already inside a
    // subtracted cylinder contributes nothing.
    auto walk = [&](auto&& self, const AffineMap& current, int remaining) -> void {
        Box b = current.apply(unit);
        if (excluded(b)) return;
        if (remaining == 0) {
            out.push_back(std::move(b));
            return;
        }
        for (int i = 0; i < m; ++i) self(self, compose(current, ifs.map(i)), remaining - 1);
    };
    walk(walk, ifs.word_map(piece.base), ext);

    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CoverCache::CoverCache(const HomogeneousIFS& ifs, std::vector<PieceSpec> pieces)
    : ifs_(ifs), pieces_(std::move(pieces)) {}

const std::vector<Box>& CoverCache::cover(int piece_index, int depth) {
    auto key = std::make_pair(piece_index, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (piece_index < 0 || piece_index >= static_cast<int>(pieces_.size()))
        throw IndexOutOfRange("piece index " + std::to_string(piece_index));
    return memo_.emplace(key, piece_cover(ifs_, pieces_[piece_index], depth)).first->second;
}

std::pair<GraphDirectedSystem, std::vector<PieceSpec>> build_partition_graph(
    const HomogeneousIFS& ifs, const ClassCertificate& cert) {
    const int m = ifs.map_count();
    if (cert.k_vector.empty())
        throw OutsideClass("system has no overlaps; the partition construction needs at least one");
    if (!cert.overlaps.empty() && cert.overlaps.back().index == m - 2)
        throw NotNormalized("last adjacent pair carries an overlap; reflect first");

    const int k1 = cert.k_vector.front();
    const int vertex_count = m + k1 - 2;

    // New labels: overlap pairs level by level, then overlap-free pairs, then
    // the tail pieces of the last map.
    std::vector<int> order;
    for (const auto& level : cert.gamma) order.insert(order.end(), level.begin(), level.end());
    order.insert(order.end(), cert.gamma_rest.begin(), cert.gamma_rest.end());

    std::vector<int> exponent_of(m - 1, 0);  // 0 = overlap-free
    for (const auto& o : cert.overlaps) exponent_of[o.index] = o.exponent;

    std::vector<PieceSpec> pieces(vertex_count);
    GraphDirectedSystem gds;
    gds.vertex_count = vertex_count;
    gds.dim = ifs.dim();
    gds.lambda = ifs.lambda();

    auto add_edge = [&](int from, int to, MapWord via) {
        GdsEdge e;
        e.from = from;
        e.to = to;
        e.map = ifs.word_map(via);
        e.via = std::move(via);
        gds.edges.push_back(std::move(e));
    };

    for (int pos = 0; pos < m - 1; ++pos) {
        const int j = order[pos];
        const int k = exponent_of[j];
        if (k > 0) {
            // f_j(K) minus the overlap with its right neighbor: equals
            // f_j(K \ f_m^(k-1)(K)), which splits into every piece below
            // the k-th tail level.
            PieceSpec p;
            p.base = {j};
            MapWord cut{j};
            cut.insert(cut.end(), k - 1, m - 1);
            p.minus = {std::move(cut)};
            pieces[pos] = std::move(p);
            for (int to = 0; to <= m + k - 4; ++to) add_edge(pos, to, {j});
        } else {
            pieces[pos] = PieceSpec{{j}, {}};
            for (int to = 0; to < vertex_count; ++to) add_edge(pos, to, {j});
        }
    }

    for (int t = 0; t + 2 <= k1 - 1; ++t) {
        // f_m^(t+1)(K) \ f_m^(t+2)(K) = f_m^(t+1)(K \ f_m(K)).
        const int v = (m - 1) + t;
        PieceSpec p;
        p.base.assign(t + 1, m - 1);
        MapWord cut(t + 2, m - 1);
        p.minus = {std::move(cut)};
        pieces[v] = std::move(p);
        MapWord via(t + 1, m - 1);
        for (int to = 0; to < m - 1; ++to) add_edge(v, to, via);
    }

    const int last = vertex_count - 1;
    pieces[last] = PieceSpec{MapWord(k1 - 1, m - 1), {}};
    if (k1 == 2) {
        for (int to = 0; to < vertex_count; ++to) add_edge(last, to, {m - 1});
    } else {
        add_edge(last, last - 1, {m - 1});
        add_edge(last, last, {m - 1});
    }

    std::sort(gds.edges.begin(), gds.edges.end(), edge_order);
    return {std::move(gds), std::move(pieces)};
}

std::pair<GraphDirectedSystem, std::vector<PieceSpec>> build_full_shift(const HomogeneousIFS& ifs) {
    GraphDirectedSystem gds;
    gds.vertex_count = 1;
    gds.dim = ifs.dim();
    gds.lambda = ifs.lambda();
    for (int i = 0; i < ifs.map_count(); ++i) {
        GdsEdge e;
        e.from = 0;
        e.to = 0;
        e.via = {i};
        e.map = ifs.map(i);
        gds.edges.push_back(std::move(e));
    }
    return {std::move(gds), {PieceSpec{}}};
}

VerificationResult verify_equations(CoverCache& cache, const GraphDirectedSystem& gds, int depth) {
    const auto& ifs = cache.ifs();
    const auto& pieces = cache.pieces();
    if (static_cast<int>(pieces.size()) != gds.vertex_count)
        throw std::invalid_argument("piece count does not match vertex count");

    int effective = depth;
    for (const auto& p : pieces) effective = std::max(effective, resolution(p));
    for (const auto& e : gds.edges)
        effective = std::max(effective,
                             static_cast<int>(e.via.size()) + resolution(pieces[e.to]));

    VerificationResult result;
    result.depth = effective;
    result.separation.depth = effective;
    result.separation.status = SeparationStatus::Certified;
    result.separation.min_gap_squared = Rational(-1);

    // Edge images, grouped per source vertex, reused by all three checks.
    std::vector<std::vector<Box>> image(gds.edges.size());
    std::vector<Box> image_hull(gds.edges.size(), Box::unit(gds.dim));
    for (std::size_t ei = 0; ei < gds.edges.size(); ++ei) {
        const auto& e = gds.edges[ei];
        const auto& target = cache.cover(e.to, effective - static_cast<int>(e.via.size()));
        std::vector<Box> img;
        img.reserve(target.size());
        for (const auto& b : target) img.push_back(e.map.apply(b));
        if (!img.empty()) {
            Box hull = img.front();
            for (const auto& b : img) hull = bounding_box(hull, b);
            image_hull[ei] = hull;
        }
        image[ei] = std::move(img);
    }

    for (int u = 0; u < gds.vertex_count && result.equations.ok; ++u) {
        const auto& lhs = cache.cover(u, effective);
        std::vector<Box> rhs;
        for (int ei : gds.out_edge_indices(u))
            rhs.insert(rhs.end(), image[ei].begin(), image[ei].end());
        std::sort(rhs.begin(), rhs.end(), lex_less);
        rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
        if (lhs == rhs) continue;
        result.equations.ok = false;
        EquationWitness w;
        w.vertex = u;
        auto li = lhs.begin();
        auto ri = rhs.begin();
        while (li != lhs.end() && ri != rhs.end() && *li == *ri) {
            ++li;
            ++ri;
        }
        if (li != lhs.end() && (ri == rhs.end() || lex_less(*li, *ri))) {
            w.box = *li;
            w.lhs_only = true;
        } else {
            w.box = *ri;
            w.lhs_only = false;
        }
        result.equations.mismatch = std::move(w);
    }

    // Sibling separation: images of distinct out-edges of the same vertex
    // must be strictly apart. A pair whose hulls are already farther apart
    // than the current minimum cannot change anything.
    for (int u = 0; u < gds.vertex_count; ++u) {
        auto out = gds.out_edge_indices(u);
        for (std::size_t x = 0; x < out.size(); ++x)
            for (std::size_t y = x + 1; y < out.size(); ++y) {
                const auto& A = image[out[x]];
                const auto& B = image[out[y]];
                Rational hull_gap = box_gap_squared(image_hull[out[x]], image_hull[out[y]]);
                if (result.separation.min_gap_squared >= 0 && hull_gap > 0 &&
                    hull_gap >= result.separation.min_gap_squared)
                    continue;
                for (const auto& a : A)
                    for (const auto& b : B) {
                        if (a.intersects(b)) {
                            if (result.separation.status == SeparationStatus::Certified) {
                                result.separation.status = SeparationStatus::UnknownAtDepth;
                                result.separation.witness = std::make_pair(a, b);
                            }
                            continue;
                        }
                        Rational g = box_gap_squared(a, b);
                        if (result.separation.min_gap_squared < 0 ||
                            g < result.separation.min_gap_squared)
                            result.separation.min_gap_squared = g;
                    }
            }
    }
    if (result.separation.status != SeparationStatus::Certified) {
        result.separation.min_gap_squared = Rational(0);
        result.separation.min_gap_lower_bound = Rational(0);
    } else {
        if (result.separation.min_gap_squared < 0) result.separation.min_gap_squared = Rational(0);
        Rational bound = sqrt_lower_bound(result.separation.min_gap_squared);
        if (bound == 0 && result.separation.min_gap_squared > 0 &&
            result.separation.min_gap_squared < 1)
            bound = result.separation.min_gap_squared;  // q <= sqrt(q) for q in (0,1)
        result.separation.min_gap_lower_bound = bound;
    }

    // Partition: piece covers pairwise disjoint and jointly exhaustive.
    std::vector<Box> piece_hull(pieces.size(), Box::unit(gds.dim));
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& cov = cache.cover(static_cast<int>(p), effective);
        if (cov.empty()) continue;
        Box hull = cov.front();
        for (const auto& b : cov) hull = bounding_box(hull, b);
        piece_hull[p] = hull;
    }
    for (std::size_t p = 0; p < pieces.size() && result.partition.disjoint; ++p)
        for (std::size_t q = p + 1; q < pieces.size() && result.partition.disjoint; ++q) {
            if (!piece_hull[p].intersects(piece_hull[q])) continue;
            for (const auto& a : cache.cover(static_cast<int>(p), effective)) {
                if (!result.partition.disjoint) break;
                for (const auto& b : cache.cover(static_cast<int>(q), effective))
                    if (a.intersects(b)) {
                        result.partition.disjoint = false;
                        result.partition.overlap_pair = std::make_pair(static_cast<int>(p),
                                                                       static_cast<int>(q));
                        result.partition.witness = a;
                        break;
                    }
            }
        }
    std::vector<Box> all;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& cov = cache.cover(static_cast<int>(p), effective);
        all.insert(all.end(), cov.begin(), cov.end());
    }
    std::sort(all.begin(), all.end(), lex_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    result.partition.complete = all == piece_cover(ifs, PieceSpec{}, effective);

    return result;
}

VerificationResult verify_equations(const HomogeneousIFS& ifs, const GraphDirectedSystem& gds,
                                    const std::vector<PieceSpec>& pieces, int depth) {
    CoverCache cache(ifs, pieces);
    return verify_equations(cache, gds, depth);
}

GraphDirectedSystem assemble_custom_graph(const HomogeneousIFS& ifs,
                                          const std::vector<PieceSpec>& pieces,
                                          const std::vector<CustomEdge>& edges) {
    const int n = static_cast<int>(pieces.size());
    const int m = ifs.map_count();
    if (n == 0) throw std::invalid_argument("custom partition needs at least one piece");
    for (const auto& p : pieces) {
        for (int idx : p.base)
            if (idx < 0 || idx >= m) throw IndexOutOfRange("piece base map index");
        for (const auto& u : p.minus) {
            if (u.size() <= p.base.size() ||
                !std::equal(p.base.begin(), p.base.end(), u.begin()))
                throw std::invalid_argument("subtracted word must strictly extend the base word");
            for (int idx : u)
                if (idx < 0 || idx >= m) throw IndexOutOfRange("subtracted word map index");
        }
    }

    GraphDirectedSystem gds;
    gds.vertex_count = n;
    gds.dim = ifs.dim();
    gds.lambda = ifs.lambda();
    std::vector<bool> has_out(n, false);
    for (const auto& ce : edges) {
        if (ce.from < 0 || ce.from >= n || ce.to < 0 || ce.to >= n)
            throw IndexOutOfRange("edge endpoint out of range");
        if (ce.via.empty()) throw std::invalid_argument("edge word must be nonempty");
        for (int idx : ce.via)
            if (idx < 0 || idx >= m) throw IndexOutOfRange("edge word map index");
        GdsEdge e;
        e.from = ce.from;
        e.to = ce.to;
        e.via = ce.via;
        e.map = ifs.word_map(ce.via);
        has_out[ce.from] = true;
        gds.edges.push_back(std::move(e));
    }
    for (int u = 0; u < n; ++u)
        if (!has_out[u])
            throw std::invalid_argument("vertex " + std::to_string(u + 1) + " has no out-edges");
    std::sort(gds.edges.begin(), gds.edges.end(), edge_order);
    return gds;
}

GraphDirectedSystem build_custom_graph(const HomogeneousIFS& ifs,
                                       const std::vector<PieceSpec>& pieces,
                                       const std::vector<CustomEdge>& edges, int depth) {
    GraphDirectedSystem gds = assemble_custom_graph(ifs, pieces, edges);
    VerificationResult check = verify_equations(ifs, gds, pieces, depth);
    if (!check.equations.ok) throw EquationMismatchError(*check.equations.mismatch, check.depth);
    if (!check.partition.disjoint || !check.partition.complete)
        throw DisjointnessError(check.partition, check.depth);
    return gds;
}

}  // namespace lipeq
