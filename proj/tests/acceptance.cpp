// Release acceptance suite.  Each test case checks one numbered release
// criterion and prints exactly one summary line, so the test log doubles as
// a sign-off sheet:
//
//   [acceptance] criterion N (<what it checks>): PASS/FAIL (<evidence>)
//
// Criteria 1-8 are blocking.  Criterion 9 is informative: it reports the
// measured oracle-call growth and flags a review when the slope looks
// super-quadratic, but never fails the build on its own.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "mkt/mkt.hpp"
#include "support/matroid_enum.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mkt;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "[acceptance] criterion " << number << " (" << name
              << "): " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
}

const std::vector<matroid::kind_t>& instance_families() {
    static const std::vector<matroid::kind_t> families = {
        matroid::kind_t::partition,
        matroid::kind_t::uniform,
        matroid::kind_t::graphic,
        matroid::kind_t::laminar,
    };
    return families;
}

const std::vector<matroid::kind_t>& all_families() {
    static const std::vector<matroid::kind_t> families = {
        matroid::kind_t::partition,      matroid::kind_t::uniform,
        matroid::kind_t::graphic,        matroid::kind_t::laminar,
        matroid::kind_t::explicit_sets,
    };
    return families;
}

const std::vector<rational>& value_grid() {
    static const std::vector<rational> grid = {rational(0), rational(1), rational(2),
                                               rational(3), rational(4)};
    return grid;
}

const std::vector<rational>& delta_choices() {
    static const std::vector<rational> deltas = {rational(1), rational(3, 2), rational(2)};
    return deltas;
}

const std::array<stability_notion, 3> delta_notions = {
    stability_notion::min, stability_notion::sum, stability_notion::max};

// Shared cache for the exhaustive small-matroid criteria, enumerated once.
const std::vector<matroid>& labeled_matroids(std::size_t n) {
    static std::array<std::vector<matroid>, 7> cache;
    static std::array<bool, 7> ready{};
    if (!ready[n]) {
        cache[n] = oracle::all_labeled_matroids(n);
        ready[n] = true;
    }
    return cache[n];
}

strict_order identity_order(std::size_t n) {
    std::vector<element_id> seq(n);
    for (element_id e = 0; e < n; ++e) seq[e] = e;
    return strict_order::from_best_first(std::move(seq));
}

std::string count_list(const std::vector<std::size_t>& counts) {
    std::string out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(counts[i]);
    }
    return out;
}

} // namespace

TEST_CASE("solver output always survives the blocker verifier", "[acceptance]") {
    constexpr std::size_t instance_count = 2100;
    std::size_t solves = 0, clean = 0;
    std::string first_failure;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 0; seed < instance_count; ++seed) {
        const std::size_t n = 1 + seed % 10;
        const auto f1 = instance_families()[seed % 4];
        const auto f2 = instance_families()[(seed / 4) % 4];
        const rational delta = delta_choices()[(seed / 16) % 3];
        const instance inst = gen_random(0xAC001000 + seed, n, f1, f2, value_grid(), delta);
        for (stability_notion notion : delta_notions) {
            ++solves;
            try {
                solve_report rep = approx_solve(inst, notion);
                if (!find_delta_blocker(inst, notion, rep.solution))
                    ++clean;
                else if (first_failure.empty())
                    first_failure = "blocker on seed " + std::to_string(seed);
            } catch (const std::exception& e) {
                if (first_failure.empty())
                    first_failure = "seed " + std::to_string(seed) + ": " + e.what();
            }
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail.precision(1);
    detail << std::fixed << clean << "/" << solves << " solver runs across " << instance_count
           << " instances verifier-clean in " << elapsed << "s";
    if (!first_failure.empty()) detail << "; first failure: " << first_failure;
    const bool pass = solves >= 2000 && clean == solves && elapsed < 60.0;
    report(1, "solver soundness", pass, detail.str());
    CHECK(solves >= 2000);
    CHECK(clean == solves);
    CHECK(elapsed < 60.0);
}

TEST_CASE("measured size ratio never exceeds three halves", "[acceptance]") {
    constexpr std::size_t instance_count = 510;
    std::size_t checks = 0, within = 0;
    rational worst(0);
    std::string first_failure;
    for (std::uint64_t seed = 0; seed < instance_count; ++seed) {
        const std::size_t n = 1 + seed % 8;
        const auto f1 = instance_families()[seed % 4];
        const auto f2 = instance_families()[(seed / 4) % 4];
        const rational delta = delta_choices()[(seed / 16) % 3];
        const instance inst = gen_random(0xAC002000 + seed, n, f1, f2, value_grid(), delta);
        for (stability_notion notion : delta_notions) {
            ++checks;
            try {
                rational ratio = ratio_check(inst, notion);
                if (worst < ratio) worst = ratio;
                if (!(rational(3, 2) < ratio)) ++within;
            } catch (const std::exception& e) {
                if (first_failure.empty())
                    first_failure = "seed " + std::to_string(seed) + ": " + e.what();
            }
        }
    }
    std::ostringstream detail;
    detail << within << "/" << checks << " exact ratios across " << instance_count
           << " instances within 3/2, worst " << worst.str();
    if (!first_failure.empty()) detail << "; first failure: " << first_failure;
    const bool pass = checks >= 500 && within == checks;
    report(2, "exact approximation ratio", pass, detail.str());
    CHECK(checks >= 500);
    CHECK(within == checks);
}

TEST_CASE("the three-halves ratio is actually reached", "[acceptance]") {
    // Part one: the committed witness keeps reproducing the extreme ratio.
    bool fixture_ok = false;
    std::string fixture_note;
    try {
        std::ifstream in("fixtures/ratio_three_halves_min.instance");
        if (!in) throw input_error("fixture file missing");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const instance fixture = parse_instance(buffer.str());
        const rational ratio = ratio_check(fixture, stability_notion::min);
        fixture_ok = ratio == rational(3, 2);
        fixture_note = "fixture ratio " + ratio.str();
    } catch (const std::exception& e) {
        fixture_note = std::string("fixture failed: ") + e.what();
    }

    // Part two: a bounded seeded search over small matching markets finds a
    // fresh witness on its own.
    std::optional<std::uint64_t> found_seed;
    std::size_t found_edges = 0;
    const std::vector<std::vector<rational>> menus = {
        {rational(1)},
        {rational(1), rational(2)},
        {rational(1), rational(2), rational(3)},
        {rational(1), rational(3)},
    };
    for (std::uint64_t seed = 0; seed < 8000 && !found_seed; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t side = 3 + seed % 2;
        const smti_instance smti = random_smti(rng, side, 9, menus[(seed / 2) % menus.size()]);
        const instance inst = smti_to_instance(smti, rational(1));
        const solve_report rep = approx_solve(inst, stability_notion::min);
        if (rep.size == 0) continue;
        const element_set best = brute_force_max_stable(inst, stability_notion::min);
        if (best.count() * 2 == rep.size * 3) {
            found_seed = seed;
            found_edges = smti.edges.size();
        }
    }
    std::ostringstream detail;
    detail << fixture_note << "; search ";
    if (found_seed)
        detail << "found seed " << *found_seed << " (" << found_edges << " edges)";
    else
        detail << "found nothing under seed 8000";
    const bool pass = fixture_ok && found_seed.has_value();
    report(3, "ratio tightness witness", pass, detail.str());
    CHECK(fixture_ok);
    CHECK(found_seed.has_value());
}

TEST_CASE("disjoint bases always admit a perfect exchange matching", "[acceptance]") {
    // Randomized sweep across every matroid family.
    const suite_result random_sweep = run_exchange_matching_suite(0xAC004000, 2000, all_families(), 8);

    // Exhaustive sweep: every matroid on up to six labeled elements, with the
    // matroid enumerator first validated against known counts and, on tiny
    // ground sets, against a direct filter of all set families.
    static const std::vector<std::size_t> expected_counts = {1, 2, 5, 16, 68, 406, 3807};
    std::vector<std::size_t> seen_counts;
    bool counts_ok = true;
    for (std::size_t n = 0; n <= 6; ++n) {
        seen_counts.push_back(labeled_matroids(n).size());
        if (seen_counts[n] != expected_counts[n]) counts_ok = false;
        if (n <= 4 && oracle::count_matroids_direct(n) != expected_counts[n]) counts_ok = false;
    }

    std::size_t matchings = 0, matching_failures = 0;
    std::string first_failure;
    for (std::size_t n = 0; n <= 6; ++n) {
        const strict_order order = identity_order(n);
        for (const matroid& m : labeled_matroids(n)) {
            const element_set a = optimal_base(m, order, element_set::full(n));
            const std::size_t rank = a.count();
            const std::uint64_t past_end = std::uint64_t{1} << n;
            for (std::uint64_t mask = 0; mask < past_end; ++mask) {
                const element_set b = element_set::from_mask(n, mask);
                if (b.count() != rank || b.intersects(a) || !m.is_independent(b)) continue;
                ++matchings;
                std::string failure;
                try {
                    const exchange_matching matching = perfect_exchange_matching(m, order, a, b);
                    element_set seen_a(n), seen_b(n);
                    for (const auto& [ea, eb] : matching.pairs) {
                        if (!order.prefers(ea, eb)) failure = "pair not order-improving";
                        if (!m.is_independent(b.without(eb).with(ea)))
                            failure = "pair swap broke independence";
                        seen_a.add(ea);
                        seen_b.add(eb);
                    }
                    if (!(seen_a == a) || !(seen_b == b)) failure = "matching not perfect";
                } catch (const std::exception& e) {
                    failure = e.what();
                }
                if (!failure.empty()) {
                    ++matching_failures;
                    if (first_failure.empty())
                        first_failure = failure + " [n=" + std::to_string(n) + "]";
                }
            }
        }
    }

    std::ostringstream detail;
    detail << "random sweep " << random_sweep.passed << "/" << random_sweep.checked
           << "; matroid counts " << count_list(seen_counts) << (counts_ok ? " as expected" : " WRONG")
           << "; " << (matchings - matching_failures) << "/" << matchings
           << " exhaustive disjoint-base matchings verified";
    if (!random_sweep.failures.empty()) detail << "; random: " << random_sweep.failures.front();
    if (!first_failure.empty()) detail << "; exhaustive: " << first_failure;
    const bool pass = random_sweep.checked >= 2000 && random_sweep.all_passed() && counts_ok &&
                      matchings > 0 && matching_failures == 0;
    report(4, "perfect exchange matchings", pass, detail.str());
    CHECK(random_sweep.checked >= 2000);
    CHECK(random_sweep.all_passed());
    CHECK(counts_ok);
    CHECK(matching_failures == 0);
}

TEST_CASE("the worst element of a circuit stays out of the optimal base", "[acceptance]") {
    // Exhaustive over every circuit of every matroid on up to six elements.
    std::size_t circuits = 0, circuit_failures = 0;
    std::string first_failure;
    for (std::size_t n = 0; n <= 6; ++n) {
        const strict_order order = identity_order(n);
        for (const matroid& m : labeled_matroids(n)) {
            const element_set a = optimal_base(m, order, element_set::full(n));
            for (const element_set& circuit : oracle::all_circuits(m)) {
                ++circuits;
                std::string failure;
                try {
                    if (!check_worst_circuit_element(m, order, a, circuit))
                        failure = "worst circuit element in the optimal base";
                } catch (const std::exception& e) {
                    failure = e.what();
                }
                if (!failure.empty()) {
                    ++circuit_failures;
                    if (first_failure.empty())
                        first_failure = failure + " [n=" + std::to_string(n) + "]";
                }
            }
        }
    }

    // Sampled fundamental circuits on larger ground sets across all families.
    const suite_result sampled = run_worst_circuit_suite(0xAC005000, 2000, all_families(), 9);

    std::ostringstream detail;
    detail << (circuits - circuit_failures) << "/" << circuits
           << " exhaustive circuits verified; sampled sweep " << sampled.passed << "/"
           << sampled.checked;
    if (!first_failure.empty()) detail << "; exhaustive: " << first_failure;
    if (!sampled.failures.empty()) detail << "; sampled: " << sampled.failures.front();
    const bool pass =
        circuits > 0 && circuit_failures == 0 && sampled.checked >= 2000 && sampled.all_passed();
    report(5, "worst circuit element exclusion", pass, detail.str());
    CHECK(circuit_failures == 0);
    CHECK(sampled.checked >= 2000);
    CHECK(sampled.all_passed());
}

TEST_CASE("all kernels of a strict instance look alike and include the computed one",
          "[acceptance]") {
    constexpr std::size_t instance_count = 400;
    std::size_t kernels_seen = 0, multi_kernel_instances = 0, failures = 0;
    std::string first_failure;
    for (std::uint64_t seed = 0; seed < instance_count; ++seed) {
        const std::size_t n = 1 + seed % 8;
        std::mt19937_64 rng(0xAC006000 + seed);
        const matroid m1 = random_matroid(rng, all_families()[seed % 5], n);
        const matroid m2 = random_matroid(rng, all_families()[(seed / 5) % 5], n);
        const strict_order o1 = random_order(rng, n);
        const strict_order o2 = random_order(rng, n);
        const std::vector<rational> v1 = preference_values_from_order(o1);
        const std::vector<rational> v2 = preference_values_from_order(o2);

        std::string failure;
        try {
            std::vector<element_set> kernels;
            for (const element_set& x : oracle::all_subsets(n)) {
                if (!m1.is_independent(x) || !m2.is_independent(x)) continue;
                const bool oracle_kernel = oracle::is_kernel(m1, m2, v1, v2, x);
                const bool library_kernel = !find_kernel_blocker(m1, m2, o1, o2, x);
                if (oracle_kernel != library_kernel) {
                    failure = "oracle and library disagree on " + x.str();
                    break;
                }
                if (oracle_kernel) kernels.push_back(x);
            }
            if (failure.empty() && kernels.empty()) failure = "no kernel exists";
            if (failure.empty()) {
                const element_set computed = fleiner_kernel(m1, m2, o1, o2);
                bool computed_found = false;
                for (const element_set& k : kernels) {
                    if (k == computed) computed_found = true;
                    if (k.count() != kernels.front().count())
                        failure = "kernels of different sizes";
                    if (!(closure_of(m1, k) == closure_of(m1, kernels.front())) ||
                        !(closure_of(m2, k) == closure_of(m2, kernels.front())))
                        failure = "kernels with different closures";
                }
                if (failure.empty() && !computed_found)
                    failure = "deferred-acceptance output is not a kernel";
                kernels_seen += kernels.size();
                if (kernels.size() > 1) ++multi_kernel_instances;
            }
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (!failure.empty()) {
            ++failures;
            if (first_failure.empty())
                first_failure = "seed " + std::to_string(seed) + ": " + failure;
        }
    }
    std::ostringstream detail;
    detail << instance_count - failures << "/" << instance_count << " instances, " << kernels_seen
           << " kernels enumerated, " << multi_kernel_instances << " instances with several";
    if (!first_failure.empty()) detail << "; first failure: " << first_failure;
    const bool pass = failures == 0 && multi_kernel_instances > 0;
    report(6, "kernel size and closure invariance", pass, detail.str());
    CHECK(failures == 0);
    CHECK(multi_kernel_instances > 0);
}

TEST_CASE("extreme tolerance values collapse to the expected notions", "[acceptance]") {
    // Small tolerance on an injective instance: near-stability degenerates to
    // plain kernel stability, checked set-for-set by dual enumeration.
    constexpr std::size_t small_count = 250;
    std::size_t small_failures = 0, stable_sets_seen = 0;
    std::string first_failure;
    for (std::uint64_t seed = 0; seed < small_count; ++seed) {
        const std::size_t n = 1 + seed % 8;
        std::mt19937_64 rng(0xAC007000 + seed);
        instance inst{random_matroid(rng, all_families()[seed % 5], n),
                      random_matroid(rng, all_families()[(seed / 5) % 5], n),
                      std::vector<rational>(n), std::vector<rational>(n), rational(1, 2)};
        const std::vector<element_id> perm1 = detail::shuffled_ids(rng, n);
        const std::vector<element_id> perm2 = detail::shuffled_ids(rng, n);
        for (std::size_t i = 0; i < n; ++i) {
            inst.p1[perm1[i]] = rational(static_cast<std::int64_t>(i + 1));
            inst.p2[perm2[i]] = rational(static_cast<std::int64_t>(i + 1));
        }
        std::string failure;
        try {
            for (const element_set& x : oracle::all_subsets(n)) {
                if (!inst.m1.is_independent(x) || !inst.m2.is_independent(x)) continue;
                const bool near_stable = !find_delta_blocker(inst, stability_notion::min, x);
                const bool kernel_stable =
                    !find_kernel_blocker(inst.m1, inst.m2, inst.p1, inst.p2, x);
                const bool oracle_near = oracle::is_stable(inst, stability_notion::min, x);
                const bool oracle_kernel =
                    oracle::is_kernel(inst.m1, inst.m2, inst.p1, inst.p2, x);
                if (near_stable != kernel_stable || near_stable != oracle_near ||
                    near_stable != oracle_kernel) {
                    failure = "notions disagree on " + x.str();
                    break;
                }
                if (near_stable) ++stable_sets_seen;
            }
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (!failure.empty()) {
            ++small_failures;
            if (first_failure.empty())
                first_failure = "small, seed " + std::to_string(seed) + ": " + failure;
        }
    }

    // Tolerance above every value: nothing can block, so every common
    // independent set is stable and the exhaustive solver must return a
    // maximum common independent set (checked against a plain one-sided
    // enumeration that knows nothing about stability).
    constexpr std::size_t large_count = 250;
    std::size_t large_failures = 0;
    for (std::uint64_t seed = 0; seed < large_count; ++seed) {
        const std::size_t n = 1 + seed % 8;
        std::mt19937_64 rng(0xAC007800 + seed);
        instance inst{random_matroid(rng, all_families()[seed % 5], n),
                      random_matroid(rng, all_families()[(seed / 5) % 5], n),
                      random_values(rng, n, value_grid()), random_values(rng, n, value_grid()),
                      rational(0)};
        rational top(0);
        for (const rational& v : inst.p1)
            if (top < v) top = v;
        for (const rational& v : inst.p2)
            if (top < v) top = v;
        inst.delta = top + rational(1);
        std::string failure;
        try {
            for (const element_set& x : oracle::all_subsets(n)) {
                if (!inst.m1.is_independent(x) || !inst.m2.is_independent(x)) continue;
                if (find_delta_blocker(inst, stability_notion::min, x) ||
                    !oracle::is_stable(inst, stability_notion::min, x)) {
                    failure = "common independent set not stable: " + x.str();
                    break;
                }
            }
            if (failure.empty()) {
                const std::size_t brute =
                    brute_force_max_stable(inst, stability_notion::min).count();
                const std::size_t plain = oracle::max_common_independent(inst.m1, inst.m2);
                if (brute != plain)
                    failure = "exhaustive solver returned " + std::to_string(brute) +
                              " instead of " + std::to_string(plain);
            }
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (!failure.empty()) {
            ++large_failures;
            if (first_failure.empty())
                first_failure = "large, seed " + std::to_string(seed) + ": " + failure;
        }
    }

    std::ostringstream detail;
    detail << small_count - small_failures << "/" << small_count << " small-tolerance instances ("
           << stable_sets_seen << " stable sets matched), " << large_count - large_failures << "/"
           << large_count << " large-tolerance instances";
    if (!first_failure.empty()) detail << "; first failure: " << first_failure;
    const bool pass = small_failures == 0 && large_failures == 0 && stable_sets_seen > 0;
    report(7, "extreme tolerance degeneration", pass, detail.str());
    CHECK(small_failures == 0);
    CHECK(large_failures == 0);
    CHECK(stable_sets_seen > 0);
}

TEST_CASE("the gadget family doubles under the approximate solver", "[acceptance]") {
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t k = 1; k <= 5; ++k) {
        const smti_instance smti = gen_tight_family(k);
        const instance inst = smti_to_instance(smti, rational(1));
        const strict_order bad1 = order_from_values(inst.p1, tight_family_bad_tiebreak(k));
        const strict_order bad2 = order_from_values(inst.p2, tight_family_bad_tiebreak(k));
        const std::size_t plain = fleiner_kernel(inst.m1, inst.m2, bad1, bad2).count();
        const std::size_t approx = approx_solve(inst, stability_notion::min).size;
        if (k > 1) detail << " ";
        detail << "k=" << k << ":" << plain << "/" << approx;
        if (plain != k || approx != 2 * k) {
            pass = false;
            detail << "!=expected(" << k << "/" << 2 * k << ")";
        }
    }
    report(8, "tie-break loss recovered by extension", pass,
           "plain/extended sizes " + detail.str());
    CHECK(pass);
}

TEST_CASE("oracle-call growth stays sub-cubic", "[acceptance]") {
    const std::array<std::size_t, 4> sizes = {8, 16, 32, 64};
    constexpr std::size_t repeats = 5;
    std::vector<double> log_n, log_calls;
    std::ostringstream measurements;
    for (std::size_t n : sizes) {
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < repeats; ++i) {
            const instance inst =
                gen_random(0xAC009000 + n * 31 + i, n, matroid::kind_t::partition,
                           matroid::kind_t::partition, value_grid(), rational(1));
            total += approx_solve(inst, stability_notion::min).oracle_calls;
        }
        const double average = static_cast<double>(total) / static_cast<double>(repeats);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_calls.push_back(std::log(average));
        measurements << " n=" << n << ":" << static_cast<std::uint64_t>(average);
    }
    double mean_x = 0, mean_y = 0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mean_x += log_n[i];
        mean_y += log_calls[i];
    }
    mean_x /= static_cast<double>(log_n.size());
    mean_y /= static_cast<double>(log_n.size());
    double numerator = 0, denominator = 0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        numerator += (log_n[i] - mean_x) * (log_calls[i] - mean_y);
        denominator += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    }
    const double slope = numerator / denominator;
    std::ostringstream detail;
    detail.precision(2);
    detail << std::fixed << "informative; log-log slope " << slope << " over average calls"
           << measurements.str();
    if (slope >= 3.0) detail << "; REVIEW: growth looks cubic or worse";
    report(9, "oracle-call scaling", true, detail.str());
    CHECK(denominator > 0.0);
    // Informative only: a steep slope asks for a review, not a red build.
    SUCCEED();
}
