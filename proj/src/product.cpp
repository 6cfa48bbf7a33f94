#include "ltlplan/product.hpp"

#include "ltlplan/errors.hpp"

#include <algorithm>

namespace ltlplan {

std::uint64_t stable_hash(const ProductState& q) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint32_t>(q.pts.size()));
    for (auto v : q.pts) mix(v);
    mix(q.buchi);
    return h;
}

bool pba_transition(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& q2) {
    if (!pts_transition(model, q.pts, q2.pts)) return false;
    auto label = pts_label(model, q.pts);
    for (const auto& e : nba.edges)
        if (e.src == q.buchi && e.dst == q2.buchi && e.guard.eval(label)) return true;
    return false;
}

double pba_weight(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& q2) {
    if (!pba_transition(model, nba, q, q2)) throw InvalidTransition("no product transition between the given states");
    return pts_weight(model, q.pts, q2.pts);
}

bool is_prefix_goal(const Nba& nba, const ProductState& q) { return nba.is_accepting(q.buchi); }

bool is_suffix_goal(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& root) {
    return pba_transition(model, nba, q, root);
}

SuccessorCursor::SuccessorCursor(const MultiRobotModel& model, const Nba& nba, const ProductState& q)
    : model_(model), source_(q), digit_(model.robots.size(), 0) {
    auto label = pts_label(model, q.pts);
    for (const auto& e : nba.edges) {
        if (e.src != q.buchi || !e.guard.eval(label)) continue;
        if (std::find(buchi_.begin(), buchi_.end(), e.dst) == buchi_.end()) buchi_.push_back(e.dst);
    }
    done_ = buchi_.empty();
    for (std::size_t i = 0; i < model.robots.size() && !done_; ++i)
        if (model.robots[i].out_edges(q.pts[i]).empty()) done_ = true;
}

std::optional<ProductState> SuccessorCursor::next() {
    if (done_) return std::nullopt;
    ProductState out;
    out.pts.resize(digit_.size());
    for (std::size_t i = 0; i < digit_.size(); ++i) {
        const auto& r = model_.robots[i];
        out.pts[i] = r.edges[r.out_edges(source_.pts[i])[digit_[i]]].dst;
    }
    out.buchi = buchi_[b_];

    if (++b_ == buchi_.size()) {
        b_ = 0;
        std::size_t i = digit_.size();
        while (true) {
            if (i == 0) {
                done_ = true;
                break;
            }
            --i;
            if (++digit_[i] < model_.robots[i].out_edges(source_.pts[i]).size()) break;
            digit_[i] = 0;
        }
    }
    return out;
}

std::vector<ProductState> pba_successors(const MultiRobotModel& model, const Nba& nba, const ProductState& q) {
    std::vector<ProductState> out;
    SuccessorCursor cur(model, nba, q);
    while (auto s = cur.next()) out.push_back(std::move(*s));
    return out;
}

// ---------------------------------------------------------------------------

bool ProductSpace::CGuard::eval(const std::vector<std::uint64_t>& bits) const {
    switch (kind) {
        case Guard::Kind::True: return true;
        case Guard::Kind::False: return false;
        case Guard::Kind::Atom: return (bits[atom / 64] >> (atom % 64)) & 1u;
        case Guard::Kind::Not: return !children.front().eval(bits);
        case Guard::Kind::And:
            for (const auto& c : children)
                if (!c.eval(bits)) return false;
            return true;
        case Guard::Kind::Or:
            for (const auto& c : children)
                if (c.eval(bits)) return true;
            return false;
    }
    return false;
}

ProductSpace::CGuard ProductSpace::compile(const Guard& g, const std::vector<std::string>& alphabet) {
    CGuard c{g.kind, 0, {}};
    if (g.kind == Guard::Kind::Atom) {
        auto it = std::find(alphabet.begin(), alphabet.end(), g.atom);
        if (it == alphabet.end()) throw UnknownAtom(g.atom);
        c.atom = static_cast<std::uint32_t>(it - alphabet.begin());
    }
    for (const auto& ch : g.children) c.children.push_back(compile(ch, alphabet));
    return c;
}

ProductSpace::ProductSpace(const MultiRobotModel& model, const Nba& nba) : model_(model), nba_(nba) {
    validate(nba);
    nb_ = static_cast<std::uint32_t>(nba.num_states());
    words_ = std::max<std::size_t>(1, (nb_ + 63) / 64);
    label_words_ = std::max<std::size_t>(1, (nba.alphabet.size() + 63) / 64);

    unsigned __int128 total = 1;
    for (const auto& r : model.robots) {
        total *= r.num_states();
        if (total >= (static_cast<unsigned __int128>(1) << 63))
            throw CapacityExceeded(pts_state_count(model), (1ULL << 63) - 1, "product transition system key space");
    }

    for (const auto& r : model.robots) {
        const auto n = static_cast<std::uint32_t>(r.num_states());
        radix_.push_back(n);
        std::vector<std::uint8_t> has(static_cast<std::size_t>(n) * n, 0);
        std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
        for (const auto& e : r.edges) {
            has[e.src * n + e.dst] = 1;
            w[e.src * n + e.dst] = e.weight;
        }
        has_.push_back(std::move(has));
        w_.push_back(std::move(w));

        std::vector<std::vector<std::uint64_t>> bits(n, std::vector<std::uint64_t>(label_words_, 0));
        for (std::uint32_t q = 0; q < n; ++q) {
            for (const auto& a : r.labels[q]) {
                auto it = std::find(nba.alphabet.begin(), nba.alphabet.end(), a);
                if (it == nba.alphabet.end()) continue;
                auto k = static_cast<std::size_t>(it - nba.alphabet.begin());
                bits[q][k / 64] |= 1ULL << (k % 64);
            }
        }
        label_bits_.push_back(std::move(bits));
    }
    for (const auto& e : nba.edges) guards_.push_back(compile(e.guard, nba.alphabet));
    accepting_.assign(nb_, false);
    for (auto f : nba.accepting) accepting_[f] = true;
}

bool ProductSpace::pts_edge(const PtsState& a, const PtsState& b) const {
    for (std::size_t i = 0; i < radix_.size(); ++i)
        if (!edge(i, a[i], b[i])) return false;
    return true;
}

double ProductSpace::pts_cost(const PtsState& a, const PtsState& b) const {
    double w = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) w += weight(i, a[i], b[i]);
    return w;
}

std::uint64_t ProductSpace::encode(const PtsState& q) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) key = key * radix_[i] + q[i];
    return key;
}

PtsState ProductSpace::decode(std::uint64_t key) const {
    PtsState q(radix_.size());
    for (std::size_t i = radix_.size(); i-- > 0;) {
        q[i] = static_cast<std::uint32_t>(key % radix_[i]);
        key /= radix_[i];
    }
    return q;
}

void ProductSpace::step_table(const PtsState& q, std::vector<std::uint64_t>& out) const {
    std::vector<std::uint64_t> bits(label_words_, 0);
    for (std::size_t i = 0; i < radix_.size(); ++i)
        for (std::size_t k = 0; k < label_words_; ++k) bits[k] |= label_bits_[i][q[i]][k];
    out.assign(static_cast<std::size_t>(nb_) * words_, 0);
    for (std::size_t e = 0; e < nba_.edges.size(); ++e) {
        const auto& edge = nba_.edges[e];
        if (!guards_[e].eval(bits)) continue;
        out[edge.src * words_ + edge.dst / 64] |= 1ULL << (edge.dst % 64);
    }
}

}  // namespace ltlplan
