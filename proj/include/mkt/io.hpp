#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "matroid.hpp"
#include "rational.hpp"

namespace mkt {

// Line-oriented instance text format.  '#' starts a comment, blank lines
// are ignored, every section appears exactly once, GROUND comes first:
//
//   GROUND 3
//   MATROID1 partition          (or: uniform <rank> | graphic <vertices>
//   CLASS 1 0                    | laminar | explicit)
//   CLASS 1 1 2
//   MATROID2 uniform 2
//   P1 1 3/2 0.5
//   P2 1 1 1
//   DELTA 1
//
// Continuation lines by family: partition CLASS <cap> <ids...>, laminar
// SET <cap> <ids...>, graphic EDGE <a> <b> (one per element, in element
// order), explicit IND <ids...> (bare IND is the empty set).  Parse errors
// carry line and column numbers.

namespace detail {

struct token {
    std::string text;
    std::size_t line;
    std::size_t col;
};

[[noreturn]] inline void fail_at(std::size_t line, std::size_t col, const std::string& message) {
    throw input_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                      message);
}

inline std::vector<std::vector<token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<token>> lines;
    std::size_t line_no = 1;
    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
        std::vector<token> tokens;
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] == '#') break;
            if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r' &&
                   raw[i] != '#')
                ++i;
            tokens.push_back({raw.substr(start, i - start), line_no, start + 1});
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        ++line_no;
    }
    return lines;
}

inline std::size_t parse_count(const token& t, const std::string& what) {
    if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
        fail_at(t.line, t.col, what + " must be a nonnegative integer, got '" + t.text + "'");
    try {
        return std::stoull(t.text);
    } catch (const std::exception&) {
        fail_at(t.line, t.col, what + " out of range: '" + t.text + "'");
    }
}

inline rational parse_rational_token(const token& t, const std::string& what) {
    try {
        return rational::parse(t.text);
    } catch (const input_error&) {
        fail_at(t.line, t.col, what + " must be a rational (like 2, 3/2 or 0.5), got '" + t.text +
                                   "'");
    }
}

inline element_id parse_element(const token& t, std::size_t n) {
    std::size_t e = parse_count(t, "element id");
    if (e >= n)
        fail_at(t.line, t.col,
                "element id " + t.text + " outside ground set of size " + std::to_string(n));
    return e;
}

// One matroid section accumulated during parsing, built at the end.
struct matroid_section {
    token header;
    std::string family;
    std::size_t inline_count = 0; // uniform rank / graphic vertex count
    std::vector<element_set> groups;
    std::vector<std::size_t> capacities;
    std::vector<std::pair<std::size_t, std::size_t>> edge_list;
    std::vector<element_set> family_sets;

    [[nodiscard]] matroid build(std::size_t n) const {
        try {
            if (family == "uniform") return matroid::uniform(n, inline_count);
            if (family == "partition") return matroid::partition(n, groups, capacities);
            if (family == "laminar") return matroid::laminar(n, groups, capacities);
            if (family == "graphic") return matroid::graphic(inline_count, edge_list);
            return matroid::from_independent_sets(n, family_sets);
        } catch (const input_error& e) {
            fail_at(header.line, header.col, e.what());
        }
    }
};

} // namespace detail

inline std::string family_name(matroid::kind_t kind) {
    switch (kind) {
    case matroid::kind_t::uniform: return "uniform";
    case matroid::kind_t::partition: return "partition";
    case matroid::kind_t::graphic: return "graphic";
    case matroid::kind_t::laminar: return "laminar";
    case matroid::kind_t::explicit_sets: return "explicit";
    }
    throw invariant_error("family_name: unknown matroid kind");
}

inline matroid::kind_t parse_family_name(const std::string& name) {
    if (name == "uniform") return matroid::kind_t::uniform;
    if (name == "partition") return matroid::kind_t::partition;
    if (name == "graphic") return matroid::kind_t::graphic;
    if (name == "laminar") return matroid::kind_t::laminar;
    if (name == "explicit") return matroid::kind_t::explicit_sets;
    throw input_error("unknown matroid family '" + name + "'");
}

inline instance parse_instance(const std::string& text) {
    using detail::fail_at;
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw input_error("empty instance: GROUND section missing");
    const auto& first = lines.front();
    if (first[0].text != "GROUND")
        fail_at(first[0].line, first[0].col, "instance must start with GROUND");
    if (first.size() != 2)
        fail_at(first[0].line, first[0].col, "GROUND takes exactly one count");
    const std::size_t n = detail::parse_count(first[1], "ground size");

    std::optional<detail::matroid_section> sections[2];
    std::optional<std::vector<rational>> values[2];
    std::optional<rational> delta;
    detail::matroid_section* open = nullptr;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& tokens = lines[li];
        const auto& head = tokens[0];
        const std::string& word = head.text;
        if (word == "MATROID1" || word == "MATROID2") {
            std::size_t index = word == "MATROID1" ? 0 : 1;
            if (sections[index]) fail_at(head.line, head.col, "duplicate " + word + " section");
            if (tokens.size() < 2) fail_at(head.line, head.col, word + " needs a family name");
            detail::matroid_section section;
            section.header = head;
            section.family = tokens[1].text;
            if (section.family == "uniform" || section.family == "graphic") {
                if (tokens.size() != 3)
                    fail_at(tokens[1].line, tokens[1].col,
                            section.family + (section.family == "uniform"
                                                  ? " needs a rank, like: uniform 2"
                                                  : " needs a vertex count, like: graphic 4"));
                section.inline_count = detail::parse_count(
                    tokens[2], section.family == "uniform" ? "rank" : "vertex count");
            } else if (section.family == "partition" || section.family == "laminar" ||
                       section.family == "explicit") {
                if (tokens.size() != 2)
                    fail_at(tokens[2].line, tokens[2].col, "unexpected token after family name");
            } else {
                fail_at(tokens[1].line, tokens[1].col,
                        "unknown matroid family '" + section.family + "'");
            }
            sections[index] = std::move(section);
            open = &*sections[index];
        } else if (word == "CLASS" || word == "SET") {
            const char* wanted = word == "CLASS" ? "partition" : "laminar";
            if (open == nullptr || open->family != wanted)
                fail_at(head.line, head.col,
                        word + " line only belongs in a " + wanted + " matroid section");
            if (tokens.size() < 2) fail_at(head.line, head.col, word + " needs a capacity");
            element_set members(n);
            for (std::size_t i = 2; i < tokens.size(); ++i)
                members.add(detail::parse_element(tokens[i], n));
            open->groups.push_back(members);
            open->capacities.push_back(detail::parse_count(tokens[1], "capacity"));
        } else if (word == "EDGE") {
            if (open == nullptr || open->family != "graphic")
                fail_at(head.line, head.col, "EDGE line only belongs in a graphic matroid section");
            if (tokens.size() != 3) fail_at(head.line, head.col, "EDGE takes two endpoints");
            open->edge_list.emplace_back(detail::parse_count(tokens[1], "endpoint"),
                                         detail::parse_count(tokens[2], "endpoint"));
        } else if (word == "IND") {
            if (open == nullptr || open->family != "explicit")
                fail_at(head.line, head.col, "IND line only belongs in an explicit matroid section");
            element_set members(n);
            for (std::size_t i = 1; i < tokens.size(); ++i)
                members.add(detail::parse_element(tokens[i], n));
            open->family_sets.push_back(members);
        } else if (word == "P1" || word == "P2") {
            std::size_t index = word == "P1" ? 0 : 1;
            if (values[index]) fail_at(head.line, head.col, "duplicate " + word + " section");
            open = nullptr;
            if (tokens.size() != n + 1)
                fail_at(head.line, head.col,
                        word + " needs exactly " + std::to_string(n) + " values, got " +
                            std::to_string(tokens.size() - 1));
            std::vector<rational> vs;
            vs.reserve(n);
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                rational v = detail::parse_rational_token(tokens[i], "preference value");
                if (v < rational(0))
                    fail_at(tokens[i].line, tokens[i].col, "preference values must be nonnegative");
                vs.push_back(v);
            }
            values[index] = std::move(vs);
        } else if (word == "DELTA") {
            if (delta) fail_at(head.line, head.col, "duplicate DELTA section");
            open = nullptr;
            if (tokens.size() != 2) fail_at(head.line, head.col, "DELTA takes exactly one value");
            rational d = detail::parse_rational_token(tokens[1], "delta");
            if (!(rational(0) < d)) fail_at(tokens[1].line, tokens[1].col, "delta must be positive");
            delta = d;
        } else if (word == "GROUND") {
            fail_at(head.line, head.col, "duplicate GROUND section");
        } else {
            fail_at(head.line, head.col, "unknown section '" + word + "'");
        }
    }

    const char* names[] = {"MATROID1", "MATROID2"};
    for (std::size_t i = 0; i < 2; ++i)
        if (!sections[i]) throw input_error(std::string("missing ") + names[i] + " section");
    for (std::size_t i = 0; i < 2; ++i)
        if (!values[i])
            throw input_error(std::string("missing ") + (i == 0 ? "P1" : "P2") + " section");
    if (!delta) throw input_error("missing DELTA section");
    if (sections[0]->family == "graphic" && sections[0]->edge_list.size() != n)
        throw input_error("MATROID1 graphic needs one EDGE line per element");
    if (sections[1]->family == "graphic" && sections[1]->edge_list.size() != n)
        throw input_error("MATROID2 graphic needs one EDGE line per element");
    instance inst{sections[0]->build(n), sections[1]->build(n), std::move(*values[0]),
                  std::move(*values[1]), *delta};
    inst.validate();
    return inst;
}

namespace detail {

inline void emit_matroid(std::ostream& os, const std::string& label, const matroid& m) {
    os << label << " " << family_name(m.kind());
    switch (m.kind()) {
    case matroid::kind_t::uniform: os << " " << m.uniform_rank() << "\n"; break;
    case matroid::kind_t::graphic:
        os << " " << m.vertex_count() << "\n";
        for (const auto& [a, b] : m.edges()) os << "EDGE " << a << " " << b << "\n";
        break;
    case matroid::kind_t::partition:
    case matroid::kind_t::laminar: {
        os << "\n";
        const char* line = m.kind() == matroid::kind_t::partition ? "CLASS" : "SET";
        for (std::size_t i = 0; i < m.groups().size(); ++i) {
            os << line << " " << m.capacities()[i];
            m.groups()[i].for_each([&](element_id e) { os << " " << e; });
            os << "\n";
        }
        break;
    }
    case matroid::kind_t::explicit_sets:
        os << "\n";
        for (const auto& s : m.independent_family()) {
            os << "IND";
            s.for_each([&](element_id e) { os << " " << e; });
            os << "\n";
        }
        break;
    }
}

inline void emit_values(std::ostream& os, const std::string& label,
                        const std::vector<rational>& values) {
    os << label;
    for (const auto& v : values) os << " " << v.str();
    os << "\n";
}

} // namespace detail

// Canonical emission; parse_instance(emit_instance(inst)) == inst.
inline std::string emit_instance(const instance& inst) {
    inst.validate();
    std::ostringstream os;
    os << "GROUND " << inst.size() << "\n";
    detail::emit_matroid(os, "MATROID1", inst.m1);
    detail::emit_matroid(os, "MATROID2", inst.m2);
    detail::emit_values(os, "P1", inst.p1);
    detail::emit_values(os, "P2", inst.p2);
    os << "DELTA " << inst.delta.str() << "\n";
    return os.str();
}

// Extended instance rendered in the same format: parallel-copy matroids are
// flattened to concrete families and the extended values become P1/P2.
// Comment lines carry the origin/copy of every extended element and the two
// tie-broken orders, which plain values cannot express.
inline std::string emit_extended_instance(const extended_instance& ext) {
    std::ostringstream os;
    os << "# extension notion=" << to_string(ext.notion) << " copies_per_element=" << ext.copies
       << " level_boost=" << ext.level_boost.str() << "\n";
    if (!ext.d_levels.empty()) {
        os << "# d_levels";
        for (const auto& d : ext.d_levels) os << " " << d.str();
        os << "\n";
    }
    for (element_id e = 0; e < ext.size(); ++e)
        os << "# element " << e << " = origin " << ext.elements[e].origin << " copy "
           << copy_label(ext.notion, ext.elements[e].copy) << "\n";
    auto emit_order = [&](const char* label, const strict_order& order) {
        os << "# " << label << " best-first:";
        for (element_id e : order.best_first()) os << " " << e;
        os << "\n";
    };
    emit_order("order1", ext.order1);
    emit_order("order2", ext.order2);
    os << "GROUND " << ext.size() << "\n";
    detail::emit_matroid(os, "MATROID1", flatten_parallel_copies(ext.m1));
    detail::emit_matroid(os, "MATROID2", flatten_parallel_copies(ext.m2));
    detail::emit_values(os, "P1", ext.pstar1);
    detail::emit_values(os, "P2", ext.pstar2);
    os << "DELTA 1\n"; // the extension is tie-free; any positive value parses
    return os.str();
}

// Bipartite matching instance with ties and incomplete lists.  Elements of
// the derived matroid instance are the edges, in file order; each side's
// preference value sits on the edge line:
//
//   SMTI 2 2
//   EDGE 0 0 1 1        (man woman man_value woman_value)
//   DELTA 1
struct smti_instance {
    struct edge {
        std::size_t man;
        std::size_t woman;
        rational man_value;
        rational woman_value;

        friend bool operator==(const edge&, const edge&) = default;
    };
    std::size_t men = 0;
    std::size_t women = 0;
    std::vector<edge> edges;

    friend bool operator==(const smti_instance&, const smti_instance&) = default;
};

inline std::pair<smti_instance, rational> parse_smti(const std::string& text) {
    using detail::fail_at;
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw input_error("empty input: SMTI section missing");
    const auto& first = lines.front();
    if (first[0].text != "SMTI") fail_at(first[0].line, first[0].col, "input must start with SMTI");
    if (first.size() != 3)
        fail_at(first[0].line, first[0].col, "SMTI takes the two side sizes, like: SMTI 2 3");
    smti_instance smti;
    smti.men = detail::parse_count(first[1], "man count");
    smti.women = detail::parse_count(first[2], "woman count");
    std::optional<rational> delta;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& tokens = lines[li];
        const auto& head = tokens[0];
        if (head.text == "EDGE") {
            if (tokens.size() != 5)
                fail_at(head.line, head.col, "EDGE takes man, woman and the two values");
            smti_instance::edge e;
            e.man = detail::parse_count(tokens[1], "man index");
            e.woman = detail::parse_count(tokens[2], "woman index");
            if (e.man >= smti.men)
                fail_at(tokens[1].line, tokens[1].col, "man index outside declared range");
            if (e.woman >= smti.women)
                fail_at(tokens[2].line, tokens[2].col, "woman index outside declared range");
            e.man_value = detail::parse_rational_token(tokens[3], "preference value");
            e.woman_value = detail::parse_rational_token(tokens[4], "preference value");
            if (e.man_value < rational(0) || e.woman_value < rational(0))
                fail_at(tokens[3].line, tokens[3].col, "preference values must be nonnegative");
            for (const auto& prior : smti.edges)
                if (prior.man == e.man && prior.woman == e.woman)
                    fail_at(head.line, head.col, "duplicate edge");
            smti.edges.push_back(e);
        } else if (head.text == "DELTA") {
            if (delta) fail_at(head.line, head.col, "duplicate DELTA section");
            if (tokens.size() != 2) fail_at(head.line, head.col, "DELTA takes exactly one value");
            rational d = detail::parse_rational_token(tokens[1], "delta");
            if (!(rational(0) < d)) fail_at(tokens[1].line, tokens[1].col, "delta must be positive");
            delta = d;
        } else {
            fail_at(head.line, head.col, "unknown section '" + head.text + "'");
        }
    }
    if (!delta) throw input_error("missing DELTA section");
    return {std::move(smti), *delta};
}

inline std::string emit_smti(const smti_instance& smti, const rational& delta) {
    std::ostringstream os;
    os << "SMTI " << smti.men << " " << smti.women << "\n";
    for (const auto& e : smti.edges)
        os << "EDGE " << e.man << " " << e.woman << " " << e.man_value.str() << " "
           << e.woman_value.str() << "\n";
    os << "DELTA " << delta.str() << "\n";
    return os.str();
}

// Edges become the ground set; matroid 1 partitions them by man, matroid 2
// by woman, all capacities 1, so common independent sets are exactly the
// matchings and the preference values carry over per side.
inline instance smti_to_instance(const smti_instance& smti, const rational& delta) {
    const std::size_t n = smti.edges.size();
    std::map<std::size_t, element_set> by_man, by_woman;
    std::vector<rational> p1, p2;
    p1.reserve(n);
    p2.reserve(n);
    for (element_id e = 0; e < n; ++e) {
        const auto& edge = smti.edges[e];
        if (edge.man >= smti.men || edge.woman >= smti.women)
            throw input_error("smti_to_instance: edge endpoint outside declared range");
        by_man.try_emplace(edge.man, element_set(n)).first->second.add(e);
        by_woman.try_emplace(edge.woman, element_set(n)).first->second.add(e);
        p1.push_back(edge.man_value);
        p2.push_back(edge.woman_value);
    }
    auto to_partition = [&](const std::map<std::size_t, element_set>& classes) {
        std::vector<element_set> groups;
        groups.reserve(classes.size());
        for (const auto& [vertex, members] : classes) groups.push_back(members);
        return matroid::partition(n, std::move(groups),
                                  std::vector<std::size_t>(classes.size(), 1));
    };
    instance inst{to_partition(by_man), to_partition(by_woman), std::move(p1), std::move(p2),
                  delta};
    inst.validate();
    return inst;
}

} // namespace mkt
