#include "koszul/instance.hpp"

#include <fstream>
#include <sstream>

namespace koszul {

OrderedPresentation QuiverInstance::ordered() const {
    if (!order) throw ContractError("instance has no [order] section");
    return {pres, *order};
}

std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

struct Section {
    int line;
    std::string header;            // e.g. "vertices", "h p1"
    std::vector<Line> body;
};

struct Preamble {
    std::string kind;
    std::map<std::string, std::string> keys;  // top-level "key value" lines
    std::map<std::string, int> key_lines;
};

void split_sections(const std::string& text, Preamble& pre, std::vector<Section>& sections) {
    std::istringstream is(text);
    std::string raw;
    int number = 0;
    Section* current = nullptr;
    while (std::getline(is, raw)) {
        ++number;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        auto toks = tokens(line);
        if (toks.empty()) continue;
        if (toks[0].front() == '[') {
            std::string header = line.substr(line.find('[') + 1);
            auto close = header.find(']');
            if (close == std::string::npos) throw ParseError(number, "unterminated section header");
            sections.push_back({number, header.substr(0, close), {}});
            current = &sections.back();
            continue;
        }
        if (current) {
            current->body.push_back({number, line});
        } else {
            if (toks.size() != 2) throw ParseError(number, "expected 'key value' before sections");
            if (toks[0] == "kind")
                pre.kind = toks[1];
            else {
                pre.keys[toks[0]] = toks[1];
                pre.key_lines[toks[0]] = number;
            }
        }
    }
}

RatVec parse_rat_line(const Line& l) {
    RatVec out;
    for (const std::string& t : tokens(l.text)) {
        try {
            out.push_back(parse_rat(t));
        } catch (const std::invalid_argument& e) {
            throw ParseError(l.number, e.what());
        }
    }
    return out;
}

QuiverInstance parse_quiver(const std::vector<Section>& sections) {
    QuiverInstance qi;
    Quiver q;
    std::vector<std::vector<RelationTerm>> relations;
    std::vector<std::pair<int, int>> order_pairs;
    bool has_order = false;
    for (const Section& s : sections) {
        if (s.header == "vertices") {
            for (const Line& l : s.body)
                for (const std::string& t : tokens(l.text)) q.vertices.push_back(t);
        } else if (s.header == "arrows") {
            for (const Line& l : s.body) {
                auto toks = tokens(l.text);
                if (toks.size() != 3) throw ParseError(l.number, "expected 'id src dst'");
                try {
                    q.arrows.push_back(
                        {toks[0], q.vertex_index(toks[1]), q.vertex_index(toks[2])});
                } catch (const ContractError& e) {
                    throw ParseError(l.number, e.what());
                }
            }
        } else if (s.header == "relations") {
            for (const Line& l : s.body) {
                try {
                    relations.push_back(parse_relation(q, l.text));
                } catch (const ContractError& e) {
                    throw ParseError(l.number, e.what());
                }
            }
        } else if (s.header == "order") {
            has_order = true;
            for (const Line& l : s.body) {
                auto toks = tokens(l.text);
                if (toks.size() != 3 || toks[1] != "<")
                    throw ParseError(l.number, "expected 'a < b'");
                try {
                    order_pairs.emplace_back(q.vertex_index(toks[0]), q.vertex_index(toks[2]));
                } catch (const ContractError& e) {
                    throw ParseError(l.number, e.what());
                }
            }
        } else {
            throw ParseError(s.line, "unknown section [" + s.header + "] in a quiver instance");
        }
    }
    try {
        qi.pres = QuadraticPresentation::make(q, relations);
        if (has_order)
            qi.order = PartialOrder::from_pairs(q.vertex_count(), order_pairs);
    } catch (const ContractError& e) {
        throw ParseError(0, e.what());
    }
    return qi;
}

ArrangementInstance parse_arrangement(const std::vector<Section>& sections) {
    ArrangementInstance ai;
    std::vector<RatVec> rows;
    for (const Section& s : sections) {
        if (s.header == "space") {
            for (const Line& l : s.body) rows.push_back(parse_rat_line(l));
        } else if (s.header == "eta") {
            for (const Line& l : s.body) ai.pa.eta = parse_rat_line(l);
        } else if (s.header == "xi") {
            for (const Line& l : s.body) ai.pa.xi = parse_rat_line(l);
        } else {
            throw ParseError(s.line, "unknown section [" + s.header + "] in an arrangement");
        }
    }
    if (rows.empty()) throw ParseError(0, "arrangement needs a [space] section");
    ai.pa.n = static_cast<int>(rows[0].size());
    for (const RatVec& r : rows)
        if (static_cast<int>(r.size()) != ai.pa.n) throw ParseError(0, "ragged [space] rows");
    ai.pa.v = Subspace::from_span(
        RationalMatrix::from_rows(static_cast<std::size_t>(ai.pa.n), rows));
    if (static_cast<int>(ai.pa.eta.size()) != ai.pa.n)
        throw ParseError(0, "[eta] length does not match the coordinate count");
    if (static_cast<int>(ai.pa.xi.size()) != ai.pa.n)
        throw ParseError(0, "[xi] length does not match the coordinate count");
    return ai;
}

BlocksInstance parse_blocks(const Preamble& pre, const std::vector<Section>& sections) {
    BlocksInstance bi;
    int origin = 0;
    if (auto it = pre.keys.find("origin"); it != pre.keys.end()) origin = std::stoi(it->second);
    std::optional<std::vector<long>> mu, nu;
    for (const Section& s : sections) {
        std::vector<long> vals;
        for (const Line& l : s.body)
            for (const std::string& t : tokens(l.text)) vals.push_back(std::stol(t));
        if (s.header == "mu")
            mu = vals;
        else if (s.header == "nu")
            nu = vals;
        else
            throw ParseError(s.line, "unknown section [" + s.header + "] in a blocks instance");
    }
    if (!mu || !nu) throw ParseError(0, "blocks instance needs [mu] and [nu]");
    bi.bp.mu = Composition::of(*mu, origin);
    bi.bp.nu = Composition::of(*nu, origin);
    if (bi.bp.mu.total() != bi.bp.nu.total())
        throw ParseError(0, "mu and nu are compositions of different totals");
    bi.bp.n = static_cast<int>(bi.bp.mu.total());
    return bi;
}

LocalizationInstance parse_localization(const Preamble& pre,
                                        const std::vector<Section>& sections) {
    LocalizationInstance li;
    auto need = [&](const std::string& key) {
        auto it = pre.keys.find(key);
        if (it == pre.keys.end()) throw ParseError(0, "missing top-level key '" + key + "'");
        return std::stoul(it->second);
    };
    std::size_t z2 = need("z2");
    li.la.u_dim = need("u");
    li.la.cap = 2;
    li.la.z_dims = {0, 0, z2};
    li.la.label = "hand-coded";
    for (const Section& s : sections) {
        auto toks = tokens(s.header);
        if (toks.size() != 2 || toks[0] != "h")
            throw ParseError(s.line, "unknown section [" + s.header + "] in a localization");
        li.index_names.push_back(toks[1]);
        RationalMatrix m(li.la.u_dim, z2);
        if (s.body.size() != li.la.u_dim)
            throw ParseError(s.line, "[h " + toks[1] + "] needs exactly u rows");
        for (std::size_t r = 0; r < li.la.u_dim; ++r) {
            RatVec row = parse_rat_line(s.body[r]);
            if (row.size() != z2) throw ParseError(s.body[r].number, "h row has wrong length");
            for (std::size_t c = 0; c < z2; ++c) m.at(r, c) = row[c];
        }
        li.la.h.push_back({RationalMatrix(0, 0), RationalMatrix(0, 0), std::move(m)});
    }
    li.la.index_count = li.la.h.size();
    if (li.la.index_count == 0) throw ParseError(0, "localization instance has no [h ...] sections");

    // derive the inclusion U -> Z_2: the unique z with h_alpha(z) = u for all
    // alpha (the characters restrict to the identity on the image of U)
    RationalMatrix stacked(li.la.index_count * li.la.u_dim, z2);
    for (std::size_t a = 0; a < li.la.index_count; ++a)
        for (std::size_t r = 0; r < li.la.u_dim; ++r)
            for (std::size_t c = 0; c < z2; ++c)
                stacked.at(a * li.la.u_dim + r, c) = li.la.h[a][2].at(r, c);
    li.la.u_inclusion = RationalMatrix(z2, li.la.u_dim);
    for (std::size_t j = 0; j < li.la.u_dim; ++j) {
        RatVec rhs(li.la.index_count * li.la.u_dim, Rat(0));
        for (std::size_t a = 0; a < li.la.index_count; ++a) rhs[a * li.la.u_dim + j] = 1;
        RatVec z;
        if (!solve(stacked, rhs, z))
            throw ParseError(0, "characters admit no common section of U (h_alpha | U != id)");
        for (std::size_t c = 0; c < z2; ++c) li.la.u_inclusion.at(c, j) = z[c];
    }
    return li;
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    Preamble pre;
    std::vector<Section> sections;
    split_sections(text, pre, sections);
    if (pre.kind.empty()) throw ParseError(0, "missing 'kind' line");
    InstanceFile f;
    f.kind = pre.kind;
    f.digest = fnv1a_digest(text);
    if (pre.kind == "quiver")
        f.body = parse_quiver(sections);
    else if (pre.kind == "arrangement")
        f.body = parse_arrangement(sections);
    else if (pre.kind == "blocks")
        f.body = parse_blocks(pre, sections);
    else if (pre.kind == "localization")
        f.body = parse_localization(pre, sections);
    else
        throw ParseError(0, "unknown instance kind '" + pre.kind + "'");
    return f;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open instance file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_instance(os.str());
}

}  // namespace koszul
