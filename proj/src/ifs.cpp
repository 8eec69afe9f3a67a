#include "fsum/ifs.hpp"
#include "fsum/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace fsum {

std::vector<Point> canonicalize(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), PointLexLess{});
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

DigitSet::DigitSet(std::vector<Point> digits) : digits_(canonicalize(std::move(digits))) {
    if (digits_.size() < 2) throw std::invalid_argument("DigitSet needs at least 2 distinct digits");
    for (const auto& p : digits_)
        require_same_dimension(p.dimension(), digits_.front().dimension(), "DigitSet");
}

bool DigitSet::contains(const Point& p) const {
    return std::binary_search(digits_.begin(), digits_.end(), p, PointLexLess{});
}

DigitSet difference_digits(const DigitSet& digits) {
    std::vector<Point> diffs;
    diffs.reserve(static_cast<std::size_t>(digits.size()) * static_cast<std::size_t>(digits.size()));
    for (const auto& a : digits.points())
        for (const auto& b : digits.points()) diffs.push_back(a - b);
    return DigitSet(std::move(diffs));
}

HomogeneousIFS::HomogeneousIFS(Rational ratio, OrthoMatrix ortho, DigitSet digits, bool normalized_zero_digit)
    : linear_{std::move(ratio), std::move(ortho)}, digits_(std::move(digits)),
      normalized_zero_digit_(normalized_zero_digit) {
    if (!(linear_.ratio > 0 && linear_.ratio < 1))
        throw std::invalid_argument("HomogeneousIFS: ratio must lie in (0,1)");
    require_same_dimension(linear_.ortho.dimension(), digits_.dimension(), "HomogeneousIFS");
    if (normalized_zero_digit_ && !(digits_.at(0) == Point::zero(dimension())))
        throw std::invalid_argument("HomogeneousIFS: normalized_zero_digit set but digit #1 is not the zero vector");
}

AffineMap HomogeneousIFS::map(int letter) const {
    if (letter < 1 || letter > digit_count())
        throw std::out_of_range("HomogeneousIFS::map: letter out of range");
    return AffineMap(ratio(), ortho(), digits_.at(letter - 1));
}

HomogeneousIFS difference_ifs(const HomogeneousIFS& ifs) {
    return HomogeneousIFS(ifs.ratio(), ifs.ortho(), difference_digits(ifs.digits()));
}

bool Word::valid_for(int digit_count) const {
    return std::all_of(letters.begin(), letters.end(),
                       [&](int l) { return l >= 1 && l <= digit_count; });
}

std::string Word::str() const {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i && letters[i - 1] > 9) s += '.';
        s += std::to_string(letters[i]);
    }
    return s;
}

bool PointCloud::contains(const Point& p) const {
    return std::binary_search(points.begin(), points.end(), p, PointLexLess{});
}

bool PointCloud::subset_of(const PointCloud& other) const {
    return std::includes(other.points.begin(), other.points.end(), points.begin(), points.end(),
                         PointLexLess{});
}

PointCloud prefix_points(const HomogeneousIFS& ifs, int depth, std::int64_t cap) {
    if (depth < 0) throw std::invalid_argument("prefix_points: negative depth");
    Int required = pow(Int(ifs.digit_count()), static_cast<unsigned>(depth));
    if (required > cap)
        throw budget_error("prefix_points enumeration cap exceeded", required.str(), std::to_string(cap));

    std::vector<Point> cloud{Point::zero(ifs.dimension())};
    for (int level = 0; level < depth; ++level) {
        std::vector<Point> next;
        next.reserve(cloud.size() * static_cast<std::size_t>(ifs.digit_count()));
        for (const auto& digit : ifs.digits().points())
            for (const auto& p : cloud) next.push_back(digit + ifs.linear() * p);
        cloud = canonicalize(std::move(next));
    }

    Rational max_norm(0);
    for (const auto& digit : ifs.digits().points()) max_norm = std::max(max_norm, digit.norm_sq());
    Rational rho_n(1);
    for (int i = 0; i < depth; ++i) rho_n *= ifs.ratio();
    Rational one_minus = 1 - ifs.ratio();

    PointCloud result;
    result.depth = depth;
    result.points = std::move(cloud);
    result.tail_bound_sq = rho_n * rho_n * max_norm / (one_minus * one_minus);
    std::ostringstream os;
    os << "prefix depth " << depth << " of ifs(ratio=" << format_rational(ifs.ratio())
       << ", digits=" << ifs.digit_count() << ")";
    result.description = os.str();
    return result;
}

std::string to_string(Separation s) {
    switch (s) {
        case Separation::Holds: return "Holds";
        case Separation::Fails: return "Fails";
        case Separation::UnknownAtDepth: return "UnknownAtDepth";
    }
    return "?";
}

namespace {

// Difference-walk node: an exact state s = (ratio*O)^{-k} (p_k - q_k) for a
// pair of codings that agree nowhere before depth k, plus discovery links
// for witness reconstruction.
struct WalkNode {
    Point state;
    int parent = -1;       // -1 for a depth-1 start state
    int edge_left = 0;     // digit (1-based) appended on the left coding
    int edge_right = 0;    // digit appended on the right coding
};

struct SuccEntry {
    bool computed = false;
    std::vector<std::array<int, 3>> edges; // {to, left_letter, right_letter}
    std::optional<Rational> min_rejected;
};

// Exact value of the eventually periodic coding prefix.cycle^inf.
Point periodic_coding_value(const HomogeneousIFS& ifs, const Word& prefix, const Word& cycle) {
    const int d = ifs.dimension();
    Point acc = Point::zero(d);
    LinearPart power{Rational(1), OrthoMatrix::identity(d)};
    for (int letter : prefix.letters) {
        acc = acc + power * ifs.digits().at(letter - 1);
        power = power * ifs.linear();
    }
    // acc + power * (I - (ratio*O)^q)^{-1} * cycle_block
    Point block = Point::zero(d);
    LinearPart cyc_power{Rational(1), OrthoMatrix::identity(d)};
    for (int letter : cycle.letters) {
        block = block + cyc_power * ifs.digits().at(letter - 1);
        cyc_power = cyc_power * ifs.linear();
    }
    std::vector<Rational> entries = Matrix::identity(d).row_major();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            entries[static_cast<std::size_t>(i * d + j)] -= cyc_power.ratio * cyc_power.ortho.matrix().at(i, j);
    Point tail = Matrix(d, std::move(entries)).inverse() * block;
    return acc + power * tail;
}

} // namespace

SeparationVerdict ssc_check(const HomogeneousIFS& ifs, int probe_depth, std::int64_t state_cap) {
    if (probe_depth < 1) throw std::invalid_argument("ssc_check: probe_depth must be >= 1");
    const int m = ifs.digit_count();
    const LinearPart inverse_linear{Rational(1) / ifs.ratio(), ifs.ortho().transpose()};

    // Squared diameter bound of the first-level cylinder covers:
    // B = 2 * max_b |b - b_1| / (1 - ratio), all exact via squared norms.
    Rational max_sq(0);
    for (const auto& b : ifs.digits().points())
        max_sq = std::max(max_sq, (b - ifs.digits().at(0)).norm_sq());
    Rational one_minus = 1 - ifs.ratio();
    const Rational bound_sq = 4 * max_sq / (one_minus * one_minus);

    SeparationVerdict verdict;
    verdict.probe_depth = probe_depth;
    verdict.bound_sq = bound_sq;

    std::vector<WalkNode> nodes;
    std::map<Point, int, PointLexLess> index;
    std::vector<SuccEntry> succ;
    bool capped = false;

    auto intern = [&](Point state, int parent, int le, int ri) -> int {
        auto it = index.find(state);
        if (it != index.end()) return it->second;
        if (static_cast<std::int64_t>(nodes.size()) >= state_cap) {
            capped = true;
            return -1;
        }
        int id = static_cast<int>(nodes.size());
        index.emplace(state, id);
        nodes.push_back(WalkNode{std::move(state), parent, le, ri});
        succ.emplace_back();
        return id;
    };

    std::optional<Rational> level_min_rejected;
    std::vector<int> frontier;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            Point s = inverse_linear * (ifs.digits().at(i) - ifs.digits().at(j));
            Rational nsq = s.norm_sq();
            if (nsq > bound_sq) {
                if (!level_min_rejected || nsq < *level_min_rejected) level_min_rejected = nsq;
                continue;
            }
            int id = intern(std::move(s), -1, i + 1, j + 1);
            if (id >= 0) frontier.push_back(id);
        }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    int level = 1;
    while (!frontier.empty() && level < probe_depth && !capped) {
        std::vector<int> next;
        level_min_rejected.reset();
        for (int id : frontier) {
            if (!succ[static_cast<std::size_t>(id)].computed) {
                SuccEntry entry;
                entry.computed = true;
                for (int i = 0; i < m && !capped; ++i)
                    for (int j = 0; j < m && !capped; ++j) {
                        Point s = inverse_linear *
                                  (nodes[static_cast<std::size_t>(id)].state + (ifs.digits().at(i) - ifs.digits().at(j)));
                        Rational nsq = s.norm_sq();
                        if (nsq > bound_sq) {
                            if (!entry.min_rejected || nsq < *entry.min_rejected) entry.min_rejected = nsq;
                            continue;
                        }
                        int to = intern(std::move(s), id, i + 1, j + 1);
                        if (to >= 0) entry.edges.push_back({to, i + 1, j + 1});
                    }
                succ[static_cast<std::size_t>(id)] = std::move(entry);
            }
            const SuccEntry& entry = succ[static_cast<std::size_t>(id)];
            for (const auto& e : entry.edges) next.push_back(e[0]);
            if (entry.min_rejected && (!level_min_rejected || *entry.min_rejected < *level_min_rejected))
                level_min_rejected = entry.min_rejected;
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
        ++level;
    }

    verdict.states_explored = static_cast<std::int64_t>(nodes.size());

    if (frontier.empty() && !capped) {
        verdict.status = Separation::Holds;
        verdict.holds_depth = level;
        verdict.min_rejected_norm_sq = level_min_rejected;
        return verdict;
    }

    // Look for a reachable cycle among the fully expanded states.
    // 0 = unvisited, 1 = on stack, 2 = done.
    std::vector<int> color(nodes.size(), 0);
    std::vector<int> cycle_nodes;
    {
        std::vector<std::pair<int, std::size_t>> stack;
        for (std::size_t root = 0; root < nodes.size() && cycle_nodes.empty(); ++root) {
            if (color[root] != 0) continue;
            stack.emplace_back(static_cast<int>(root), 0);
            color[root] = 1;
            while (!stack.empty() && cycle_nodes.empty()) {
                auto& [v, next_edge] = stack.back();
                const auto& entry = succ[static_cast<std::size_t>(v)];
                if (!entry.computed || next_edge >= entry.edges.size()) {
                    color[static_cast<std::size_t>(v)] = 2;
                    stack.pop_back();
                    continue;
                }
                int to = entry.edges[next_edge][0];
                ++next_edge;
                if (color[static_cast<std::size_t>(to)] == 1) {
                    // Found a cycle: unwind the stack back to `to`.
                    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                        cycle_nodes.push_back(it->first);
                        if (it->first == to) break;
                    }
                    std::reverse(cycle_nodes.begin(), cycle_nodes.end());
                } else if (color[static_cast<std::size_t>(to)] == 0) {
                    color[static_cast<std::size_t>(to)] = 1;
                    stack.emplace_back(to, 0);
                }
            }
        }
    }

    if (cycle_nodes.empty()) {
        verdict.status = Separation::UnknownAtDepth;
        return verdict;
    }

    // Witness: access path (discovery links) + the cycle's edge labels.
    verdict.status = Separation::Fails;
    int entry_node = cycle_nodes.front();
    std::vector<int> access;
    for (int v = entry_node; v != -1; v = nodes[static_cast<std::size_t>(v)].parent) access.push_back(v);
    std::reverse(access.begin(), access.end());

    Word left_prefix, right_prefix;
    for (int v : access) {
        left_prefix.letters.push_back(nodes[static_cast<std::size_t>(v)].edge_left);
        right_prefix.letters.push_back(nodes[static_cast<std::size_t>(v)].edge_right);
    }

    Word left_cycle, right_cycle;
    for (std::size_t i = 0; i < cycle_nodes.size(); ++i) {
        int from = cycle_nodes[i];
        int to = cycle_nodes[(i + 1) % cycle_nodes.size()];
        const auto& entry = succ[static_cast<std::size_t>(from)];
        auto found = std::find_if(entry.edges.begin(), entry.edges.end(),
                                  [&](const std::array<int, 3>& e) { return e[0] == to; });
        if (found == entry.edges.end()) throw std::logic_error("ssc_check: broken cycle edge");
        left_cycle.letters.push_back((*found)[1]);
        right_cycle.letters.push_back((*found)[2]);
    }

    Point left_value = periodic_coding_value(ifs, left_prefix, left_cycle);
    Point right_value = periodic_coding_value(ifs, right_prefix, right_cycle);
    if (!(left_value == right_value))
        throw std::logic_error("ssc_check: witness codings disagree (internal bug)");
    if (left_prefix.letters.front() == right_prefix.letters.front())
        throw std::logic_error("ssc_check: witness codings share the first letter (internal bug)");

    verdict.left_prefix = std::move(left_prefix);
    verdict.left_cycle = std::move(left_cycle);
    verdict.right_prefix = std::move(right_prefix);
    verdict.right_cycle = std::move(right_cycle);
    verdict.common_point = std::move(left_value);
    return verdict;
}

SimilarityDimension similarity_dimension(const HomogeneousIFS& ifs) {
    SimilarityDimension out;
    out.digit_count = ifs.digit_count();
    out.ratio = ifs.ratio();
    out.value = log(Float(out.digit_count)) / -log(to_float(out.ratio));
    return out;
}

std::vector<std::vector<Point>> translation_intersection_digits(const DigitSet& digits,
                                                                const std::vector<Point>& translation_digits) {
    DigitSet diffs = difference_digits(digits);
    std::vector<std::vector<Point>> result;
    result.reserve(translation_digits.size());
    for (const auto& t : translation_digits) {
        if (!diffs.contains(t))
            throw std::invalid_argument("translation_intersection_digits: translation digit " + format_point(t) +
                                        " is not in D-D");
        std::vector<Point> position;
        for (const auto& dpt : digits.points())
            if (digits.contains(dpt - t)) position.push_back(dpt);
        result.push_back(std::move(position));
    }
    return result;
}

HomogeneousIFS ifs_from_json(const Json& j) {
    try {
        int dimension = j.at("dimension").get<int>();
        Rational ratio = parse_rational(j.at("ratio").get<std::string>());
        std::vector<Rational> entries;
        for (const auto& item : j.at("ortho")) {
            if (item.is_array())
                for (const auto& e : item) entries.push_back(parse_rational(e.get<std::string>()));
            else
                entries.push_back(parse_rational(item.get<std::string>()));
        }
        OrthoMatrix ortho{Matrix(dimension, std::move(entries))};
        std::vector<Point> digits;
        for (const auto& item : j.at("digits")) {
            if (item.is_array()) {
                Point::Coords coords;
                for (const auto& e : item) coords.push_back(parse_rational(e.get<std::string>()));
                digits.push_back(Point(std::move(coords)));
            } else {
                digits.push_back(parse_point(item.get<std::string>()));
            }
        }
        bool normalized = j.value("normalized_zero_digit", false);
        return HomogeneousIFS(ratio, ortho, DigitSet(std::move(digits)), normalized);
    } catch (const Json::exception& e) {
        throw parse_error(std::string("bad ifs description: ") + e.what());
    }
}

Json ifs_to_json(const HomogeneousIFS& ifs) {
    Json j;
    j["dimension"] = ifs.dimension();
    j["ratio"] = format_rational(ifs.ratio());
    Json ortho = Json::array();
    for (const auto& e : ifs.ortho().matrix().row_major()) ortho.push_back(format_rational(e));
    j["ortho"] = std::move(ortho);
    Json digits = Json::array();
    for (const auto& p : ifs.digits().points()) digits.push_back(format_point(p));
    j["digits"] = std::move(digits);
    j["normalized_zero_digit"] = ifs.normalized_zero_digit();
    return j;
}

HomogeneousIFS load_ifs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open ifs file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw parse_error("bad JSON in " + path + ": " + e.what());
    }
    return ifs_from_json(j);
}

} // namespace fsum
