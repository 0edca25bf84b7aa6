// Command-line front end: solve, verify, brute-force, ratio-check, extend
// and generate near-stability instances.  Every command prints readable
// output plus one machine-readable `RESULT key=value ...` line.  Exit codes:
// 0 success (verify: stable), 1 blocker found or bad input, 2 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mkt/mkt.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mkt::input_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mkt::input_error("cannot open '" + path + "' for writing");
    out << content;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

mkt::stability_notion parse_notion(const std::string& name, bool allow_kernel) {
    if (name == "min") return mkt::stability_notion::min;
    if (name == "sum") return mkt::stability_notion::sum;
    if (name == "max") return mkt::stability_notion::max;
    if (allow_kernel && name == "kernel") return mkt::stability_notion::kernel;
    throw mkt::input_error("unknown notion '" + name + "' (expected min, sum, max" +
                           (allow_kernel ? " or kernel)" : ")"));
}

mkt::element_set parse_set(const std::string& text, std::size_t n) {
    mkt::element_set set(n);
    if (text == "-") return set; // the empty set, as printed by id_list
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, ',')) {
        std::size_t begin = token.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        std::size_t end = token.find_last_not_of(" \t");
        token = token.substr(begin, end - begin + 1);
        if (token.find_first_not_of("0123456789") != std::string::npos)
            throw mkt::input_error("--set must be a comma list of element ids, got '" + token +
                                   "'");
        set.add(std::stoull(token));
    }
    return set;
}

std::string id_list(const mkt::element_set& set) {
    std::string out;
    set.for_each([&](mkt::element_id e) {
        if (!out.empty()) out += ",";
        out += std::to_string(e);
    });
    return out.empty() ? "-" : out;
}

std::vector<mkt::matroid::kind_t> parse_families(const std::vector<std::string>& names) {
    std::vector<mkt::matroid::kind_t> families;
    for (const auto& name : names) families.push_back(mkt::parse_family_name(name));
    if (families.empty())
        families = {mkt::matroid::kind_t::partition, mkt::matroid::kind_t::uniform,
                    mkt::matroid::kind_t::graphic, mkt::matroid::kind_t::laminar};
    return families;
}

int run_solve(const std::string& input, const std::string& notion_name, bool emit_extended) {
    mkt::instance inst = mkt::parse_instance(read_file(input));
    mkt::stability_notion notion = parse_notion(notion_name, false);
    if (emit_extended) std::cout << mkt::emit_extended_instance(mkt::extend_for(inst, notion));
    mkt::solve_report report = mkt::approx_solve(inst, notion);
    std::cout << "near-stable set of size " << report.size << ": " << report.solution.str()
              << "\n"
              << "extended instance had " << report.extended_size << " elements; "
              << report.oracle_calls << " oracle calls\n";
    std::cout << "RESULT status=stable notion=" << mkt::to_string(notion)
              << " size=" << report.size << " solution=" << id_list(report.solution)
              << " extended_size=" << report.extended_size
              << " oracle_calls=" << report.oracle_calls << "\n";
    return 0;
}

int run_verify(const std::string& input, const std::string& notion_name,
               const std::string& set_text) {
    mkt::instance inst = mkt::parse_instance(read_file(input));
    mkt::stability_notion notion = parse_notion(notion_name, true);
    mkt::element_set candidate = parse_set(set_text, inst.size());
    auto certificate = mkt::find_delta_blocker(inst, notion, candidate);
    if (!certificate) {
        std::cout << "stable: no blocker under notion " << mkt::to_string(notion) << "\n";
        std::cout << "RESULT status=stable notion=" << mkt::to_string(notion)
                  << " set=" << id_list(candidate) << "\n";
        return 0;
    }
    std::cout << "blocked: " << certificate->str() << "\n";
    std::cout << "RESULT status=blocked notion=" << mkt::to_string(notion)
              << " set=" << id_list(candidate) << " " << certificate->str() << "\n";
    return 1;
}

int run_opt(const std::string& input, const std::string& notion_name) {
    mkt::instance inst = mkt::parse_instance(read_file(input));
    mkt::stability_notion notion = parse_notion(notion_name, true);
    mkt::element_set best = mkt::brute_force_max_stable(inst, notion);
    std::cout << "largest stable set has size " << best.count() << ": " << best.str() << "\n";
    std::cout << "RESULT status=ok notion=" << mkt::to_string(notion) << " size=" << best.count()
              << " solution=" << id_list(best) << "\n";
    return 0;
}

int run_ratio(const std::string& input, const std::string& notion_name) {
    mkt::instance inst = mkt::parse_instance(read_file(input));
    mkt::stability_notion notion = parse_notion(notion_name, false);
    mkt::solve_report report = mkt::approx_solve(inst, notion);
    mkt::element_set best = mkt::brute_force_max_stable(inst, notion);
    mkt::rational ratio = mkt::ratio_check(inst, notion);
    std::cout << "optimum " << best.count() << " vs approximation " << report.size << ": ratio "
              << ratio.str() << " (bound 3/2)\n";
    std::cout << "RESULT status=ok notion=" << mkt::to_string(notion) << " ratio=" << ratio.str()
              << " approx_size=" << report.size << " opt_size=" << best.count() << "\n";
    return 0;
}

int run_extend(const std::string& input, const std::string& notion_name, const std::string& out) {
    mkt::instance inst = mkt::parse_instance(read_file(input));
    mkt::stability_notion notion = parse_notion(notion_name, false);
    mkt::extended_instance ext = mkt::extend_for(inst, notion);
    write_output(out, mkt::emit_extended_instance(ext));
    std::cout << "RESULT status=ok notion=" << mkt::to_string(notion)
              << " extended_size=" << ext.size() << " copies=" << ext.copies
              << " d_levels=" << ext.d_levels.size() << "\n";
    return 0;
}

int run_exchange_check(std::uint64_t seed, std::size_t count,
                       const std::vector<std::string>& family_names, std::size_t max_size) {
    auto families = parse_families(family_names);
    mkt::suite_result matching =
        mkt::run_exchange_matching_suite(seed, count, families, max_size);
    mkt::suite_result circuits = mkt::run_worst_circuit_suite(seed + 1, count, families, max_size);
    for (const auto& suite : {std::make_pair("exchange-matching", &matching),
                              std::make_pair("worst-circuit", &circuits)}) {
        std::cout << suite.first << ": " << suite.second->passed << "/" << suite.second->checked
                  << " passed\n";
        for (const auto& failure : suite.second->failures)
            std::cout << "  failure: " << failure << "\n";
    }
    bool ok = matching.all_passed() && circuits.all_passed();
    std::cout << "RESULT status=" << (ok ? "ok" : "violated")
              << " matching_checked=" << matching.checked
              << " matching_passed=" << matching.passed
              << " circuit_checked=" << circuits.checked
              << " circuit_passed=" << circuits.passed << "\n";
    return ok ? 0 : 2;
}

int run_gen(std::uint64_t seed, std::size_t size, const std::string& family1,
            const std::string& family2, const std::string& levels_text,
            const std::string& delta_text, const std::string& out) {
    std::vector<mkt::rational> levels;
    std::string token;
    std::istringstream stream(levels_text);
    while (std::getline(stream, token, ',')) levels.push_back(mkt::rational::parse(token));
    mkt::instance inst =
        mkt::gen_random(seed, size, mkt::parse_family_name(family1),
                        mkt::parse_family_name(family2), levels, mkt::rational::parse(delta_text));
    write_output(out, mkt::emit_instance(inst));
    std::cout << "RESULT status=ok n=" << inst.size() << " out=" << (out.empty() ? "-" : out)
              << "\n";
    return 0;
}

int run_convert_smti(const std::string& input, const std::string& out) {
    auto [smti, delta] = mkt::parse_smti(read_file(input));
    mkt::instance inst = mkt::smti_to_instance(smti, delta);
    write_output(out, mkt::emit_instance(inst));
    std::cout << "RESULT status=ok edges=" << smti.edges.size()
              << " out=" << (out.empty() ? "-" : out) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-stable common independent sets of two weakly ordered matroids"};
    app.require_subcommand(1);

    std::string input, output, notion = "min", set_text, family1 = "partition",
                family2 = "partition", levels = "0,1,2,3,4", delta = "1";
    std::vector<std::string> families;
    bool emit_extended = false;
    std::uint64_t seed = 1;
    std::size_t count = 100, size = 8, max_size = 10;

    auto* solve = app.add_subcommand("solve", "approximate a largest near-stable set");
    solve->add_option("--input", input, "instance file")->required();
    solve->add_option("--notion", notion, "min|sum|max");
    solve->add_flag("--emit-extended", emit_extended, "also print the tie-free extension");

    auto* verify = app.add_subcommand("verify", "check a set for blockers (exit 1 when blocked)");
    verify->add_option("--input", input, "instance file")->required();
    verify->add_option("--notion", notion, "min|sum|max|kernel");
    verify->add_option("--set", set_text, "comma-separated element ids, e.g. 0,3,5")->required();

    auto* opt = app.add_subcommand("opt", "largest stable set by exhaustive search");
    opt->add_option("--input", input, "instance file")->required();
    opt->add_option("--notion", notion, "min|sum|max|kernel");

    auto* ratio = app.add_subcommand("ratio", "optimum size over approximation size, exactly");
    ratio->add_option("--input", input, "instance file")->required();
    ratio->add_option("--notion", notion, "min|sum|max");

    auto* extend = app.add_subcommand("extend", "dump the tie-free parallel-copy extension");
    extend->add_option("--input", input, "instance file")->required();
    extend->add_option("--notion", notion, "min|sum|max");
    extend->add_option("--out", output, "output file (default stdout)");

    auto* exchange = app.add_subcommand("exchange-check", "randomized exchange/circuit suites");
    exchange->add_option("--seed", seed, "random seed");
    exchange->add_option("--count", count, "checks per suite");
    exchange->add_option("--family", families, "matroid families to draw from (repeatable)");
    exchange->add_option("--max-size", max_size, "largest ground set to draw");

    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--size", size, "ground set size");
    gen->add_option("--family1", family1, "first matroid family");
    gen->add_option("--family2", family2, "second matroid family");
    gen->add_option("--levels", levels, "comma-separated preference levels");
    gen->add_option("--delta", delta, "blocking threshold");
    gen->add_option("--out", output, "output file (default stdout)");

    auto* convert = app.add_subcommand("convert-smti", "matching instance to matroid instance");
    convert->add_option("--input", input, "SMTI file")->required();
    convert->add_option("--out", output, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(input, notion, emit_extended);
        if (verify->parsed()) return run_verify(input, notion, set_text);
        if (opt->parsed()) return run_opt(input, notion);
        if (ratio->parsed()) return run_ratio(input, notion);
        if (extend->parsed()) return run_extend(input, notion, output);
        if (exchange->parsed()) return run_exchange_check(seed, count, families, max_size);
        if (gen->parsed()) return run_gen(seed, size, family1, family2, levels, delta, output);
        if (convert->parsed()) return run_convert_smti(input, output);
    } catch (const mkt::invariant_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        std::cout << "RESULT status=invariant-violation\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << "RESULT status=error\n";
        return 1;
    }
    return 1;
}
