#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include "element_set.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "kernel.hpp"
#include "matroid.hpp"
#include "rational.hpp"

namespace mkt {

struct solve_report {
    element_set solution;
    std::size_t size = 0;
    std::uint64_t oracle_calls = 0;
    std::size_t extended_size = 0;
    // Always nullopt on a report that is returned; kept for failure paths.
    std::optional<blocking_certificate> certificate;
};

// Self-verification failure of the solver: the projected kernel admitted a
// blocker, which the theory rules out.  Carries the offending certificate.
struct solve_invariant_error : invariant_error {
    solve_invariant_error(const std::string& message, blocking_certificate cert)
        : invariant_error(message + " [" + cert.str() + "]"), certificate(std::move(cert)) {}
    blocking_certificate certificate;
};

namespace detail {

template <typename M> struct counting_oracle {
    const M* inner;
    std::uint64_t* calls;
    [[nodiscard]] std::size_t ground_size() const { return inner->ground_size(); }
    [[nodiscard]] bool is_independent(const element_set& x) const {
        ++*calls;
        return inner->is_independent(x);
    }
};

} // namespace detail

// Whether u blocks x under the given notion, with the per-side displacement
// chosen to maximize the improvement (the search over displaced elements is
// complete, so a nullopt answer really means "does not block").  Sides that
// keep an element displaced require strict improvement; a side where x + u
// is independent outright contributes improvement p_i(u) unconditionally.
// The kernel notion ignores delta and asks for strict improvement only.
inline std::optional<blocking_certificate>
delta_blocking_certificate(const instance& inst, stability_notion notion, const element_set& x,
                           element_id u) {
    auto o1 = best_entry_option(inst.m1, inst.p1, x, u);
    if (!o1) return std::nullopt;
    auto o2 = best_entry_option(inst.m2, inst.p2, x, u);
    if (!o2) return std::nullopt;
    auto strict_when_displacing = [](const entry_option& o) {
        return !o.swap_out || rational(0) < o.improvement;
    };
    bool blocks = false;
    switch (notion) {
    case stability_notion::min:
        blocks = inst.delta <= min(o1->improvement, o2->improvement);
        break;
    case stability_notion::sum:
        blocks = strict_when_displacing(*o1) && strict_when_displacing(*o2) &&
                 inst.delta <= o1->improvement + o2->improvement;
        break;
    case stability_notion::max:
        blocks = strict_when_displacing(*o1) && strict_when_displacing(*o2) &&
                 inst.delta <= max(o1->improvement, o2->improvement);
        break;
    case stability_notion::kernel:
        blocks = strict_when_displacing(*o1) && strict_when_displacing(*o2);
        break;
    }
    if (!blocks) return std::nullopt;
    return blocking_certificate{u, o1->swap_out, o2->swap_out, o1->improvement, o2->improvement};
}

// First blocker of x by ascending element id, or nullopt when x is stable
// under the notion.  x must be independent in both matroids.
inline std::optional<blocking_certificate>
find_delta_blocker(const instance& inst, stability_notion notion, const element_set& x) {
    inst.validate();
    if (x.universe() != inst.size())
        throw contract_error("find_delta_blocker: set universe does not match the instance");
    if (!inst.m1.is_independent(x) || !inst.m2.is_independent(x))
        throw contract_error("find_delta_blocker: set is not common independent");
    for (element_id u = 0; u < inst.size(); ++u) {
        if (x.contains(u)) continue;
        if (auto cert = delta_blocking_certificate(inst, notion, x, u)) return cert;
    }
    return std::nullopt;
}

// Near-stable common independent set within factor 3/2 of the largest one:
// extend the instance to a tie-free pair of parallel-copy matroids, run
// deferred acceptance there, project the kernel back, and re-verify the
// result against the blocker definition before reporting it.  oracle_calls
// counts extended-oracle queries made by the deferred-acceptance loop.
inline solve_report approx_solve(const instance& inst, stability_notion notion) {
    if (notion == stability_notion::kernel)
        throw contract_error("approx_solve: requires a delta notion (min, sum or max)");
    extended_instance ext = extend_for(inst, notion);
    std::uint64_t calls = 0;
    detail::counting_oracle<parallel_copy_matroid> c1{&ext.m1, &calls}, c2{&ext.m2, &calls};
    element_set kernel_set = fleiner_kernel(c1, c2, ext.order1, ext.order2);
    element_set solution = project(ext, kernel_set);
    if (auto cert = find_delta_blocker(inst, notion, solution))
        throw solve_invariant_error("approx_solve: projected kernel admits a blocker", *cert);
    return solve_report{solution, solution.count(), calls, ext.size(), std::nullopt};
}

// Exhaustive-search cap for the brute-force solver: MKT_BRUTE_FORCE_CAP in
// the environment overrides the default of 20, hard-limited to 24.
inline std::size_t brute_force_cap() {
    constexpr std::size_t fallback = 20, hard_limit = 24;
    const char* raw = std::getenv("MKT_BRUTE_FORCE_CAP");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    unsigned long parsed = std::strtoul(raw, &end, 10);
    if (end == nullptr || *end != '\0')
        throw input_error("MKT_BRUTE_FORCE_CAP: not a number");
    return parsed < hard_limit ? static_cast<std::size_t>(parsed) : hard_limit;
}

// Largest stable set by exhaustive search, enumerating subsets from large
// to small (within one size, in ascending mask order) and returning the
// first stable common independent one.  Some stable set always exists
// (approx_solve produces one), so running out is an invariant failure.
inline element_set brute_force_max_stable(const instance& inst, stability_notion notion,
                                          std::size_t cap = brute_force_cap()) {
    inst.validate();
    const std::size_t n = inst.size();
    if (n > cap)
        throw input_error("brute_force_max_stable: ground set of " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    auto stable = [&](const element_set& x) {
        for (element_id u = 0; u < n; ++u)
            if (!x.contains(u) && delta_blocking_certificate(inst, notion, x, u)) return false;
        return true;
    };
    for (std::size_t size = n; size + 1 > 0; --size) {
        std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
        const std::uint64_t past_end = std::uint64_t{1} << n;
        while (mask < past_end) {
            element_set x = element_set::from_mask(n, mask);
            if (inst.m1.is_independent(x) && inst.m2.is_independent(x) && stable(x)) return x;
            if (mask == 0) break;
            // Gosper's hack: next mask of the same popcount.
            std::uint64_t low = mask & (~mask + 1);
            std::uint64_t ripple = mask + low;
            mask = ripple | (((mask ^ ripple) >> 2) / low);
        }
        if (size == 0) break;
    }
    throw invariant_error("brute_force_max_stable: no stable set found");
}

// |largest stable set| / |approximate solution| as an exact rational;
// anything above 3/2 contradicts the approximation guarantee and throws.
inline rational ratio_check(const instance& inst, stability_notion notion,
                            std::size_t cap = brute_force_cap()) {
    solve_report approx = approx_solve(inst, notion);
    element_set best = brute_force_max_stable(inst, notion, cap);
    if (approx.size == 0 && best.count() == 0) return rational(1);
    if (approx.size == 0)
        throw invariant_error("ratio_check: empty approximation against nonempty optimum");
    rational ratio(static_cast<std::int64_t>(best.count()),
                   static_cast<std::int64_t>(approx.size));
    if (rational(3, 2) < ratio)
        throw invariant_error("ratio_check: ratio " + ratio.str() + " exceeds 3/2 (approx " +
                              std::to_string(approx.size) + ", optimum " +
                              std::to_string(best.count()) + ")");
    return ratio;
}

} // namespace mkt
