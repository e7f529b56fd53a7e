#include "leleec/solver.hpp"

#include "leleec/error.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

namespace leleec {

namespace {

/// Objective rescaled to integers: cost_i = objective_i * scale.
struct IntObjective {
    std::vector<std::int64_t> cost;
    std::int64_t scale = 1;

    explicit IntObjective(const IlpModel& model) {
        for (const auto& c : model.objective()) {
            if (c < 0) throw ValidationError("objective coefficients must be non-negative");
            scale = boost::integer::lcm(scale, c.denominator());
        }
        for (const auto& c : model.objective()) cost.push_back(c.numerator() * (scale / c.denominator()));
    }
    Rational unscale(std::int64_t v) const { return Rational(v, scale); }
};

struct Column {
    int row;
    std::int64_t coef;
};

std::vector<std::vector<Column>> columns(const IlpModel& model) {
    std::vector<std::vector<Column>> cols(model.size());
    const auto& rows = model.constraints();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& t : rows[r].terms) cols[t.var].push_back({static_cast<int>(r), t.coef});
    }
    return cols;
}

constexpr std::uint8_t kFree = 2;
constexpr std::size_t kCacheLimit = std::size_t{1} << 20;
constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

class Search {
public:
    Search(const IlpModel& model, std::optional<Seconds> limit, bool cache)
        : model_(model), obj_(model), cols_(columns(model)), limit_(limit), use_cache_(cache) {
        const auto& rows = model.constraints();
        minact_.assign(rows.size(), 0);
        maxabs_.assign(rows.size(), 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& t : rows[r].terms) {
                if (t.coef < 0) minact_[r] += t.coef;
                maxabs_[r] = std::max(maxabs_[r], t.coef < 0 ? -t.coef : t.coef);
            }
        }
        values_.assign(model.size(), kFree);
        in_queue_.assign(rows.size(), 0);

        // frontier_[d]: variables before d that share a row with d or later.
        const int n = static_cast<int>(model.size());
        std::vector<int> last(model.size());
        std::iota(last.begin(), last.end(), 0);
        for (const auto& row : rows) {
            int hi = 0;
            for (const auto& t : row.terms) hi = std::max(hi, t.var);
            for (const auto& t : row.terms) last[t.var] = std::max(last[t.var], hi);
        }
        frontier_.resize(model.size() + 1);
        for (int d = 1; d <= n; ++d) {
            for (int v : frontier_[d - 1])
                if (last[v] >= d) frontier_[d].push_back(v);
            if (last[d - 1] >= d) frontier_[d].push_back(d - 1);
        }
    }

    Solution run() {
        const auto start = std::chrono::steady_clock::now();
        Solution out;
        bool feasible_root = true;
        for (std::size_t r = 0; r < minact_.size(); ++r) enqueue(static_cast<int>(r));
        feasible_root = propagate();
        if (feasible_root) {
            dive();
            branch(start);
        }
        out.stats.elapsed = std::chrono::steady_clock::now() - start;
        out.stats.nodes_explored = nodes_;
        if (!has_incumbent_) throw Infeasible("no assignment satisfies every constraint");
        out.values = incumbent_;
        out.status = timed_out_ ? SolveStatus::time_limit : SolveStatus::optimal;
        out.stats.proven_optimal = !timed_out_;
        out.stats.best_cost = obj_.unscale(best_);
        return out;
    }

private:
    void enqueue(int r) {
        if (!in_queue_[r] && model_.constraints()[r].rhs - minact_[r] < maxabs_[r]) {
            in_queue_[r] = 1;
            queue_.push_back(r);
        }
    }

    /// Fixes v and updates row activities. Returns false on a violated row.
    bool assign(int v, std::uint8_t val) {
        values_[v] = val;
        trail_.push_back(v);
        if (val) cost_ += obj_.cost[v];
        bool ok = true;
        for (const auto& [r, a] : cols_[v]) {
            if ((a > 0) == (val == 1)) {
                minact_[r] += a > 0 ? a : -a;
                if (minact_[r] > model_.constraints()[r].rhs) ok = false;
                enqueue(r);
            }
        }
        return ok;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            const int v = trail_.back();
            trail_.pop_back();
            const std::uint8_t val = values_[v];
            if (val) cost_ -= obj_.cost[v];
            for (const auto& [r, a] : cols_[v]) {
                if ((a > 0) == (val == 1)) minact_[r] -= a > 0 ? a : -a;
            }
            values_[v] = kFree;
        }
        for (int r : queue_) in_queue_[r] = 0;
        queue_.clear();
    }

    bool propagate() {
        const auto& rows = model_.constraints();
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const int r = queue_[head];
            in_queue_[r] = 0;
            const std::int64_t slack = rows[r].rhs - minact_[r];
            if (slack < 0) return fail();
            for (const auto& t : rows[r].terms) {
                if (values_[t.var] != kFree) continue;
                if ((t.coef < 0 ? -t.coef : t.coef) > slack) {
                    if (!assign(t.var, t.coef > 0 ? 0 : 1)) return fail();
                }
            }
        }
        queue_.clear();
        return true;
    }

    bool fail() {
        for (int r : queue_) in_queue_[r] = 0;
        queue_.clear();
        return false;
    }

    bool try_value(int v, std::uint8_t val) { return assign(v, val) && propagate(); }

    int next_free(int from) const {
        for (int v = from; v < static_cast<int>(values_.size()); ++v) {
            if (values_[v] == kFree) return v;
        }
        return -1;
    }

    /// Color variables lean away from the first already-colored variable they
    /// share a same-sign row with; everything else leans to 0.
    std::uint8_t preferred(int v) const {
        if (model_.variables()[v].kind != VarKind::color) return 0;
        const auto& rows = model_.constraints();
        for (const auto& [r, a] : cols_[v]) {
            for (const auto& t : rows[r].terms) {
                if (t.var == v || values_[t.var] == kFree) continue;
                if (model_.variables()[t.var].kind != VarKind::color) continue;
                if ((t.coef > 0) == (a > 0)) return values_[t.var] ? 0 : 1;
            }
        }
        return 0;
    }

    void record() {
        if (has_incumbent_ && cost_ >= best_) return;
        best_ = cost_;
        incumbent_ = values_;
        has_incumbent_ = true;
    }

    void dive() {
        const std::size_t root = trail_.size();
        for (int v = next_free(0); v >= 0; v = next_free(v + 1)) {
            const std::size_t mark = trail_.size();
            const std::uint8_t pref = preferred(v);
            if (try_value(v, pref)) continue;
            undo_to(mark);
            if (!try_value(v, 1 - pref)) {
                undo_to(root);
                return;
            }
        }
        record();
        undo_to(root);
    }

    /// The remaining problem below a node branching on d depends only on the
    /// frontier values and on which later variables propagation already fixed.
    std::string state_key(int d) const {
        std::string key(reinterpret_cast<const char*>(&d), sizeof d);
        const auto& front = frontier_[d];
        for (std::size_t i = 0; i < front.size(); i += 8) {
            char bits = 0;
            for (std::size_t j = i; j < std::min(i + 8, front.size()); ++j)
                bits = static_cast<char>(bits | (values_[front[j]] << (j - i)));
            key.push_back(bits);
        }
        for (int u = d; u < static_cast<int>(values_.size()); ++u) {
            if (values_[u] == kFree) continue;
            const int tagged = values_[u] ? -u - 1 : u;
            key.append(reinterpret_cast<const char*>(&tagged), sizeof tagged);
        }
        return key;
    }

    /// A finished subtree entered at cost c cannot finish below best_ - c.
    void remember(const std::string& key, std::int64_t entry_cost) {
        if (!use_cache_) return;
        const std::int64_t floor = has_incumbent_ ? best_ - entry_cost : kUnreachable;
        auto it = cache_.find(key);
        if (it != cache_.end()) it->second = std::max(it->second, floor);
        else if (cache_.size() < kCacheLimit) cache_.emplace(key, floor);
    }

    bool cached_prune(const std::string& key) const {
        if (!use_cache_ || !has_incumbent_) return false;
        const auto it = cache_.find(key);
        return it != cache_.end() && (it->second == kUnreachable || cost_ + it->second >= best_);
    }

    void branch(std::chrono::steady_clock::time_point start) {
        struct Frame {
            int var;
            std::size_t mark;
            int value;
            std::int64_t entry_cost;
            std::string key;
        };
        const int first = next_free(0);
        if (first < 0) {
            record();
            return;
        }
        std::vector<Frame> stack;
        stack.push_back({first, trail_.size(), -1, cost_, use_cache_ ? state_key(first) : std::string()});
        while (!stack.empty()) {
            Frame& f = stack.back();
            undo_to(f.mark);
            if (++f.value > 1) {
                remember(f.key, f.entry_cost);
                stack.pop_back();
                continue;
            }
            ++nodes_;
            if (limit_ && has_incumbent_ && (nodes_ & 1023) == 0 &&
                std::chrono::steady_clock::now() - start > *limit_) {
                timed_out_ = true;
                undo_to(stack.front().mark);
                return;
            }
            const auto val = static_cast<std::uint8_t>(f.value);
            if (has_incumbent_ && cost_ + (val ? obj_.cost[f.var] : 0) >= best_) continue;
            if (!try_value(f.var, val)) continue;
            if (has_incumbent_ && cost_ >= best_) continue;
            const int next = next_free(f.var + 1);
            if (next < 0) {
                record();
                continue;
            }
            std::string key = use_cache_ ? state_key(next) : std::string();
            if (cached_prune(key)) continue;
            stack.push_back({next, trail_.size(), -1, cost_, std::move(key)});
        }
    }

    const IlpModel& model_;
    IntObjective obj_;
    std::vector<std::vector<Column>> cols_;
    std::optional<Seconds> limit_;
    bool use_cache_;
    std::vector<std::vector<int>> frontier_;
    std::unordered_map<std::string, std::int64_t> cache_;
    std::vector<std::int64_t> minact_;
    std::vector<std::int64_t> maxabs_;
    std::vector<std::uint8_t> values_;
    std::vector<int> trail_;
    std::vector<int> queue_;
    std::vector<char> in_queue_;
    std::int64_t cost_ = 0;
    std::int64_t best_ = std::numeric_limits<std::int64_t>::max();
    std::vector<std::uint8_t> incumbent_;
    bool has_incumbent_ = false;
    bool timed_out_ = false;
    std::uint64_t nodes_ = 0;
};

}  // namespace

Solution solve(const IlpModel& model, std::optional<Seconds> time_limit, const SearchOptions& options) {
    return Search(model, time_limit, options.subtree_cache).run();
}

BruteForceResult brute_force(const IlpModel& model) {
    const std::size_t n = model.size();
    if (n > kBruteForceMaxVars)
        throw TooLarge(std::to_string(n) + " variables exceed the enumeration cap of " +
                       std::to_string(kBruteForceMaxVars));
    const IntObjective obj(model);
    const auto cols = columns(model);
    const auto& rows = model.constraints();

    std::vector<std::int64_t> activity(rows.size(), 0);
    std::size_t violated = 0;
    for (const auto& row : rows) violated += row.rhs < 0 ? 1 : 0;

    std::vector<std::uint8_t> values(n, 0);
    std::int64_t cost = 0;
    std::uint32_t code = 0;  // first variable in the most significant bit
    bool found = false;
    std::int64_t best = 0;
    std::uint32_t best_code = 0;
    auto consider = [&] {
        if (violated != 0) return;
        if (!found || cost < best || (cost == best && code < best_code)) {
            found = true;
            best = cost;
            best_code = code;
        }
    };
    consider();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int v = std::countr_zero(k);
        values[v] ^= 1;
        code ^= std::uint32_t{1} << (n - 1 - v);
        const std::int64_t sign = values[v] ? 1 : -1;
        cost += sign * obj.cost[v];
        for (const auto& [r, a] : cols[v]) {
            const bool before = activity[r] > rows[r].rhs;
            activity[r] += sign * a;
            const bool after = activity[r] > rows[r].rhs;
            if (before != after) violated += after ? 1 : std::size_t(-1);
        }
        consider();
    }
    if (!found) throw Infeasible("no assignment satisfies every constraint");
    BruteForceResult out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = (best_code >> (n - 1 - i)) & 1u;
    out.cost = obj.unscale(best);
    return out;
}

}  // namespace leleec
