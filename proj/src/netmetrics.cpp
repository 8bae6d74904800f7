#include "citenet/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "citenet/error.hpp"
#include "citenet/growth_schedule.hpp"

namespace citenet {

namespace {

void require_nonempty(std::span<const double> counts, const char* what) {
    if (counts.empty()) throw ValidationError(std::string(what) + ": empty counts");
}

void require_fraction(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError(std::string(what) + ": q must lie in (0, 1)");
}

// ceil(q n) clamped to [1, n]; the epsilon keeps q n that is integral in exact
// arithmetic (0.99 * 100) from rounding up a rank.
std::size_t nearest_rank(double q, std::size_t n) {
    const double r = std::ceil(q * static_cast<double>(n) - 1e-9);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(r, 1.0)), 1, n);
}

std::vector<double> sorted_copy(std::span<const double> counts) {
    std::vector<double> v(counts.begin(), counts.end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

WindowedTally windowed_citations(const CitationIndex& index, int cohort, int window) {
    const auto& net = index.network();
    if (window < 0) throw ValidationError("window must be >= 0");
    auto [first, last] = net.cohort_range(cohort);
    if (first == last) throw ValidationError("unknown cohort " + std::to_string(cohort));
    WindowedTally tally;
    tally.cohort = cohort;
    tally.window = window;
    tally.right_censored = cohort + window > net.last_cohort();
    tally.counts.reserve(last - first);
    const int hi = cohort + window;
    for (PubId p = first; p < last; ++p) {
        std::size_t c = 0;
        for (PubId citer : index.citers(p)) {
            const int tc = net.cohort(citer);
            if (tc >= cohort && tc <= hi) ++c;
        }
        tally.counts.push_back(static_cast<double>(c));
    }
    return tally;
}

std::vector<double> citations_up_to(const CitationIndex& index, int cohort, int tau) {
    const auto& net = index.network();
    auto [first, last] = net.cohort_range(cohort);
    if (first == last) throw ValidationError("unknown cohort " + std::to_string(cohort));
    std::vector<double> counts;
    counts.reserve(last - first);
    for (PubId p = first; p < last; ++p) {
        std::size_t c = 0;
        for (PubId citer : index.citers(p))
            if (net.cohort(citer) <= tau) ++c;
        counts.push_back(static_cast<double>(c));
    }
    return counts;
}

double gini(std::span<const double> counts) {
    require_nonempty(counts, "gini");
    const auto v = sorted_copy(counts);
    const double n = static_cast<double>(v.size());
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (total <= 0.0) return 0.0;
    // sum_ij |x_i - x_j| = 2 sum_i (2i - n - 1) x_(i), i = 1..n ascending
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc += (2.0 * static_cast<double>(i + 1) - n - 1.0) * v[i];
    return acc / (n * total);
}

double hhi(std::span<const double> counts) {
    require_nonempty(counts, "hhi");
    double total = 0.0, sq = 0.0;
    for (double c : counts) {
        total += c;
        sq += c * c;
    }
    if (total <= 0.0) throw ValidationError("hhi: all counts are zero");
    // n <c^2> is just the sum of squares
    return sq / (total * total);
}

double percentile_value(std::span<const double> counts, double q) {
    require_nonempty(counts, "percentile_value");
    require_fraction(q, "percentile_value");
    const auto v = sorted_copy(counts);
    return v[nearest_rank(q, v.size()) - 1];
}

double fraction_at_most(std::span<const double> counts, double threshold) {
    require_nonempty(counts, "fraction_at_most");
    const auto k = std::count_if(counts.begin(), counts.end(),
                                 [threshold](double c) { return c <= threshold; });
    return static_cast<double>(k) / static_cast<double>(counts.size());
}

double top_share(std::span<const double> counts, double q) {
    require_nonempty(counts, "top_share");
    require_fraction(q, "top_share");
    auto v = sorted_copy(counts);
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (total <= 0.0) return 0.0;
    const std::size_t k = nearest_rank(q, v.size());
    const double top = std::accumulate(v.end() - static_cast<std::ptrdiff_t>(k), v.end(), 0.0);
    return top / total;
}

ZScores z_normalize(std::span<const double> counts) {
    ZScores out;
    std::vector<double> logs;
    for (double c : counts) {
        if (c >= 1.0)
            logs.push_back(std::log(c));
        else
            ++out.excluded;
    }
    if (logs.size() < 2)
        throw ValidationError("z_normalize needs at least 2 cited publications");
    const double n = static_cast<double>(logs.size());
    out.mu_ln = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
    double ss = 0.0;
    for (double l : logs) ss += (l - out.mu_ln) * (l - out.mu_ln);
    out.sigma_ln = std::sqrt(ss / n);
    out.z.reserve(logs.size());
    for (double l : logs) out.z.push_back(out.sigma_ln > 0.0 ? (l - out.mu_ln) / out.sigma_ln : 0.0);
    return out;
}

double clustering_coefficient(const CitationNetwork& net) {
    const std::size_t n = net.size();
    if (n == 0) return 0.0;
    std::vector<std::vector<PubId>> adj(n);
    for (PubId i = 0; i < n; ++i) {
        for (PubId j : net.refs(i)) {
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    // orient each edge towards the endpoint of higher (degree, id) rank
    auto higher = [&](PubId a, PubId b) {
        return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b;
    };
    std::vector<std::vector<PubId>> out(n);
    for (PubId u = 0; u < n; ++u)
        for (PubId v : adj[u])
            if (higher(u, v)) out[u].push_back(v);

    std::vector<std::uint64_t> triangles(n, 0);
    std::vector<PubId> mark(n, static_cast<PubId>(-1));
    for (PubId u = 0; u < n; ++u) {
        for (PubId v : out[u]) mark[v] = u;
        for (PubId v : out[u]) {
            for (PubId w : out[v]) {
                if (mark[w] == u) {
                    ++triangles[u];
                    ++triangles[v];
                    ++triangles[w];
                }
            }
        }
    }
    double sum = 0.0;
    for (PubId u = 0; u < n; ++u) {
        const double d = static_cast<double>(adj[u].size());
        if (d >= 2.0) sum += static_cast<double>(triangles[u]) / (d * (d - 1.0) / 2.0);
    }
    return sum / static_cast<double>(n);
}

Lifecycle fit_lifecycle(std::vector<double> mean_by_age, int fit_span) {
    if (fit_span < 2) throw ValidationError("lifecycle fit span must be >= 2");
    Lifecycle lc;
    lc.mean_citations = std::move(mean_by_age);
    const auto& s = lc.mean_citations;
    if (s.empty()) throw ValidationError("lifecycle: empty series");
    lc.peak_age = static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
    const int last_age = static_cast<int>(s.size()) - 1;
    if (last_age - lc.peak_age < fit_span)
        throw ValidationError("lifecycle: insufficient horizon, need " + std::to_string(fit_span) +
                              " periods past the peak at age " + std::to_string(lc.peak_age));
    std::vector<SeriesPoint> tail;
    for (int a = lc.peak_age; a <= lc.peak_age + fit_span; ++a)
        tail.push_back({static_cast<double>(a), s[static_cast<std::size_t>(a)]});
    const auto fit = fit_growth_rate(tail);
    lc.rate = fit.rate;
    lc.rate_stderr = fit.stderr_rate;
    if (fit.rate < 0.0) lc.decay_time = -1.0 / fit.rate;
    return lc;
}

Lifecycle lifecycle(const CitationIndex& index, int cohort, int fit_span) {
    const auto& net = index.network();
    auto [first, last] = net.cohort_range(cohort);
    if (first == last) throw ValidationError("unknown cohort " + std::to_string(cohort));
    const int horizon = net.last_cohort() - cohort;
    std::vector<double> by_age(static_cast<std::size_t>(horizon) + 1, 0.0);
    for (PubId p = first; p < last; ++p)
        for (PubId citer : index.citers(p)) {
            const int age = net.cohort(citer) - cohort;
            if (age >= 0) by_age[static_cast<std::size_t>(age)] += 1.0;
        }
    const double size = static_cast<double>(last - first);
    for (double& v : by_age) v /= size;
    auto lc = fit_lifecycle(std::move(by_age), fit_span);
    lc.cohort = cohort;
    return lc;
}

CohortMetrics cohort_metrics(const CitationIndex& index, int cohort, const MetricsOptions& opts) {
    const auto tally = windowed_citations(index, cohort, opts.window);
    const auto& c = tally.counts;
    CohortMetrics m;
    m.cohort = cohort;
    m.n = c.size();
    m.gini = gini(c);
    std::vector<double> cited;
    std::copy_if(c.begin(), c.end(), std::back_inserter(cited), [](double x) { return x > 0.0; });
    m.gini_cited_only = cited.empty() ? 0.0 : gini(cited);
    m.mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
    if (!cited.empty()) m.hhi = hhi(c);
    for (double th : opts.thresholds) m.uncited_fracs[th] = fraction_at_most(c, th);
    for (double q : opts.percentiles) m.percentiles[q] = percentile_value(c, q);
    const int tau = opts.tau.value_or(index.network().last_cohort());
    m.top_share = top_share(citations_up_to(index, cohort, tau), opts.top_q);
    if (cited.size() >= 2) {
        const auto z = z_normalize(c);
        m.mu_ln = z.mu_ln;
        m.sigma_ln = z.sigma_ln;
    }
    return m;
}

}  // namespace citenet
