#include "fsum/index_set.hpp"
#include "fsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fsum {

IndexSet IndexSet::progression(std::int64_t first, std::int64_t step) {
    if (first < 1 || step < 1) throw std::invalid_argument("progression: need first >= 1 and step >= 1");
    IndexSet s;
    s.kind_ = Kind::ResidueClass;
    s.step_ = step;
    s.first_ = first;
    return s;
}

IndexSet IndexSet::residue_class(std::int64_t modulus, std::int64_t residue) {
    if (modulus < 1) throw std::invalid_argument("residue_class: modulus must be >= 1");
    if (residue < 0 || residue >= modulus) throw std::invalid_argument("residue_class: residue out of range");
    return progression(residue == 0 ? modulus : residue, modulus);
}

IndexSet IndexSet::shifted_multiples(std::int64_t ell, std::int64_t j) {
    if (ell < 1 || j < 1 || j > ell) throw std::invalid_argument("shifted_multiples: need 1 <= j <= l");
    return progression(ell + j - 1, ell);
}

IndexSet IndexSet::naturals() { return residue_class(1, 0); }

IndexSet IndexSet::blocks(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                          std::optional<std::int64_t> horizon) {
    IndexSet s;
    s.kind_ = Kind::Blocks;
    std::sort(intervals.begin(), intervals.end());
    std::int64_t prev_end = 0;
    for (auto [a, b] : intervals) {
        if (a < 1 || b < a) throw std::invalid_argument("blocks: bad interval");
        if (a <= prev_end) throw std::invalid_argument("blocks: intervals must be disjoint");
        prev_end = b;
    }
    s.horizon_ = horizon.value_or(intervals.empty() ? 0 : intervals.back().second);
    if (*s.horizon_ < prev_end) throw std::invalid_argument("blocks: horizon before last block");
    s.blocks_ = std::move(intervals);
    return s;
}

IndexSet IndexSet::explicit_prefix(std::vector<std::int64_t> members, std::optional<std::int64_t> horizon) {
    IndexSet s;
    s.kind_ = Kind::Explicit;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.front() < 1)
        throw std::invalid_argument("explicit_prefix: members must be >= 1");
    s.horizon_ = horizon.value_or(members.empty() ? 0 : members.back());
    if (!members.empty() && *s.horizon_ < members.back())
        throw std::invalid_argument("explicit_prefix: horizon before last member");
    s.members_ = std::move(members);
    return s;
}

void IndexSet::check_horizon(std::int64_t n) const {
    if (horizon_ && n > *horizon_) {
        std::ostringstream os;
        os << "index-set query at " << n << " exceeds horizon " << *horizon_;
        throw horizon_error(os.str());
    }
}

bool IndexSet::contains(std::int64_t n) const {
    if (n < 1) return false;
    check_horizon(n);
    switch (kind_) {
        case Kind::ResidueClass:
            return n >= first_ && (n - first_) % step_ == 0;
        case Kind::Blocks:
            for (const auto& [a, b] : blocks_) {
                if (n < a) return false;
                if (n <= b) return true;
            }
            return false;
        case Kind::Explicit:
            return std::binary_search(members_.begin(), members_.end(), n);
    }
    return false;
}

std::int64_t IndexSet::prefix_count(std::int64_t n) const {
    if (n < 1) return 0;
    check_horizon(n);
    switch (kind_) {
        case Kind::ResidueClass:
            return n < first_ ? 0 : (n - first_) / step_ + 1;
        case Kind::Blocks: {
            std::int64_t count = 0;
            for (const auto& [a, b] : blocks_) {
                if (n < a) break;
                count += std::min(n, b) - a + 1;
            }
            return count;
        }
        case Kind::Explicit:
            return std::upper_bound(members_.begin(), members_.end(), n) - members_.begin();
    }
    return 0;
}

std::int64_t IndexSet::count_range(std::int64_t lo, std::int64_t hi) const {
    if (hi < lo) return 0;
    return prefix_count(hi) - (lo <= 1 ? 0 : prefix_count(lo - 1));
}

std::vector<std::int64_t> IndexSet::members_in(std::int64_t lo, std::int64_t hi, std::int64_t cap) const {
    lo = std::max<std::int64_t>(lo, 1);
    if (hi < lo) return {};
    check_horizon(hi);
    if (count_range(lo, hi) > cap)
        throw budget_error("index-set member enumeration cap exceeded",
                           std::to_string(count_range(lo, hi)), std::to_string(cap));
    std::vector<std::int64_t> out;
    switch (kind_) {
        case Kind::ResidueClass: {
            std::int64_t start = first_;
            if (start < lo) start += ((lo - start + step_ - 1) / step_) * step_;
            for (std::int64_t n = start; n <= hi; n += step_) out.push_back(n);
            break;
        }
        case Kind::Blocks:
            for (const auto& [a, b] : blocks_)
                for (std::int64_t n = std::max(a, lo); n <= std::min(b, hi); ++n) out.push_back(n);
            break;
        case Kind::Explicit: {
            auto from = std::lower_bound(members_.begin(), members_.end(), lo);
            auto to = std::upper_bound(members_.begin(), members_.end(), hi);
            out.assign(from, to);
            break;
        }
    }
    return out;
}

std::string IndexSet::literal() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::ResidueClass: {
            std::int64_t residue = first_ % step_;
            os << "mod:" << step_ << "," << residue;
            std::int64_t canonical_first = residue == 0 ? step_ : residue;
            if (first_ != canonical_first) os << ",from:" << first_;
            break;
        }
        case Kind::Blocks: {
            os << "blocks:";
            for (std::size_t i = 0; i < blocks_.size(); ++i) {
                if (i) os << ",";
                os << blocks_[i].first << "-" << blocks_[i].second;
            }
            if (horizon_ && (blocks_.empty() || *horizon_ != blocks_.back().second)) os << "@" << *horizon_;
            break;
        }
        case Kind::Explicit: {
            os << "list:";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                if (i) os << ",";
                os << members_[i];
            }
            if (horizon_ && (members_.empty() || *horizon_ != members_.back())) os << "@" << *horizon_;
            break;
        }
    }
    return os.str();
}

namespace {

std::int64_t parse_int64(const std::string& text) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw parse_error("bad integer: '" + text + "'");
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad integer: '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

IndexSet parse_index_set(const std::string& literal) {
    auto colon = literal.find(':');
    if (colon == std::string::npos) throw parse_error("bad index-set literal: '" + literal + "'");
    std::string kind = literal.substr(0, colon);
    std::string body = literal.substr(colon + 1);

    std::optional<std::int64_t> horizon;
    if (auto at = body.find('@'); at != std::string::npos) {
        horizon = parse_int64(body.substr(at + 1));
        body = body.substr(0, at);
    }

    if (kind == "mod") {
        auto parts = split(body, ',');
        std::optional<std::int64_t> from;
        if (parts.size() == 3 && parts[2].rfind("from:", 0) == 0) {
            from = parse_int64(parts[2].substr(5));
            parts.pop_back();
        }
        if (parts.size() != 2 || horizon) throw parse_error("bad mod literal: '" + literal + "'");
        std::int64_t modulus = parse_int64(parts[0]);
        std::int64_t residue = parse_int64(parts[1]);
        IndexSet s = IndexSet::residue_class(modulus, residue);
        if (!from) return s;
        if (*from < s.first_member() || (*from - s.first_member()) % modulus != 0)
            throw parse_error("bad mod literal start: '" + literal + "'");
        return IndexSet::progression(*from, modulus);
    }
    if (kind == "blocks") {
        std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
        if (!body.empty())
            for (const auto& item : split(body, ',')) {
                auto dash = item.find('-');
                if (dash == std::string::npos)
                    throw parse_error("bad block '" + item + "' in '" + literal + "'");
                intervals.emplace_back(parse_int64(item.substr(0, dash)), parse_int64(item.substr(dash + 1)));
            }
        return IndexSet::blocks(std::move(intervals), horizon);
    }
    if (kind == "list") {
        std::vector<std::int64_t> members;
        if (!body.empty())
            for (const auto& item : split(body, ',')) members.push_back(parse_int64(item));
        return IndexSet::explicit_prefix(std::move(members), horizon);
    }
    throw parse_error("unknown index-set kind: '" + kind + "'");
}

Json index_set_to_json(const IndexSet& s) {
    Json j;
    j["literal"] = s.literal();
    switch (s.kind()) {
        case IndexSet::Kind::ResidueClass:
            j["kind"] = "residue";
            j["modulus"] = s.modulus();
            j["first"] = s.first_member();
            break;
        case IndexSet::Kind::Blocks: {
            j["kind"] = "blocks";
            Json blocks = Json::array();
            for (const auto& [a, b] : s.block_list()) blocks.push_back(Json::array({a, b}));
            j["blocks"] = std::move(blocks);
            break;
        }
        case IndexSet::Kind::Explicit:
            j["kind"] = "list";
            j["members"] = s.member_list();
            break;
    }
    if (s.horizon())
        j["horizon"] = *s.horizon();
    else
        j["horizon"] = "infinite";
    return j;
}

bool checkpoint_inequality_holds(const IndexSet& s, const Rational& beta, int k, std::int64_t n_prev,
                                 std::int64_t n) {
    Rational threshold = beta - Rational(1, k);
    return Rational(s.count_range(n_prev + 1, n)) > threshold * Rational(n);
}

Checkpoints greedy_checkpoints(const IndexSet& s, const Rational& beta, int count, std::int64_t scan_limit) {
    if (count < 1) throw std::invalid_argument("greedy_checkpoints: count must be >= 1");
    if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("greedy_checkpoints: beta must lie in (0,1]");
    std::int64_t limit = scan_limit;
    if (s.horizon()) limit = std::min(limit, *s.horizon());

    Checkpoints cps;
    cps.beta = beta;
    cps.bounds.push_back(0);
    for (int k = 1; k <= count; ++k) {
        std::int64_t n_prev = cps.bounds.back();
        Rational threshold = beta - Rational(1, k);
        std::int64_t n = n_prev + 1;
        while (true) {
            if (n > limit)
                throw horizon_error("greedy_checkpoints: scan limit " + std::to_string(limit) +
                                    " exhausted before checkpoint " + std::to_string(k));
            std::int64_t c = s.count_range(n_prev + 1, n);
            if (Rational(c) > threshold * Rational(n)) break;
            // Any n' with n'*(1 - threshold) <= n - c also fails, because the
            // segment count can grow by at most one per step. Jump past them.
            std::int64_t next = n + 1;
            Rational one_minus = 1 - threshold;
            if (one_minus > 0) {
                Rational target = Rational(n - c) / one_minus;
                Int jump = floor_rational(target) + 1;
                if (jump > next) next = jump.convert_to<std::int64_t>();
            }
            n = next;
        }
        cps.bounds.push_back(n);
        cps.segment_counts.push_back(s.count_range(n_prev + 1, n));
    }
    return cps;
}

LimsupPartition partition_limsup(const IndexSet& s, int ell, int rounds, const Rational& beta,
                                 std::int64_t scan_limit) {
    if (ell < 2) throw std::invalid_argument("partition_limsup: l must be >= 2");
    if (rounds < 1) throw std::invalid_argument("partition_limsup: rounds must be >= 1");

    LimsupPartition out;
    out.beta = beta;
    out.checkpoints = greedy_checkpoints(s, beta, rounds * ell, scan_limit);
    const auto& n = out.checkpoints.bounds;
    std::int64_t covered = n.back();

    bool plain_naturals = s.kind() == IndexSet::Kind::ResidueClass && s.modulus() == 1 && s.first_member() == 1;
    out.part_checkpoints.resize(static_cast<std::size_t>(ell));
    for (int j = 1; j <= ell; ++j) {
        std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
        std::vector<std::int64_t> members;
        for (int k = 0; k < rounds; ++k) {
            std::int64_t lo = n[static_cast<std::size_t>(k * ell + j - 1)] + 1;
            std::int64_t hi = n[static_cast<std::size_t>(k * ell + j)];
            if (plain_naturals) {
                intervals.emplace_back(lo, hi);
            } else {
                auto segment = s.members_in(lo, hi);
                members.insert(members.end(), segment.begin(), segment.end());
            }
        }
        IndexSet part = plain_naturals ? IndexSet::blocks(std::move(intervals), covered)
                                       : IndexSet::explicit_prefix(std::move(members), covered);
        // Checkpoint guarantee transferred to the part: at its own
        // checkpoints it contains the whole generating segment.
        for (int k = 0; k < rounds; ++k) {
            int index = k * ell + j;
            std::int64_t cp = n[static_cast<std::size_t>(index)];
            std::int64_t have = part.prefix_count(cp);
            Rational threshold = beta - Rational(1, index);
            if (!(Rational(have) > threshold * Rational(cp)))
                throw std::logic_error("partition_limsup: checkpoint density lost (internal bug)");
            out.part_checkpoints[static_cast<std::size_t>(j - 1)].emplace_back(cp, have);
        }
        out.parts.push_back(std::move(part));
    }
    return out;
}

std::vector<IndexSet> residue_partition(int ell) {
    if (ell < 2) throw std::invalid_argument("residue_partition: l must be >= 2");
    std::vector<IndexSet> parts;
    for (int j = 1; j <= ell; ++j) parts.push_back(IndexSet::shifted_multiples(ell, j));
    return parts;
}

std::vector<IndexSet> covering_residue_classes(int ell) {
    if (ell < 1) throw std::invalid_argument("covering_residue_classes: l must be >= 1");
    std::vector<IndexSet> parts;
    for (int j = 1; j <= ell; ++j) parts.push_back(IndexSet::residue_class(ell, j % ell));
    return parts;
}

} // namespace fsum
