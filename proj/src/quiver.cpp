#include "koszul/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace koszul {

int Quiver::vertex_index(const std::string& name) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices[i] == name) return i;
    throw ContractError("unknown vertex '" + name + "'");
}

int Quiver::arrow_index(const std::string& id) const {
    for (int i = 0; i < arrow_count(); ++i)
        if (arrows[i].id == id) return i;
    throw ContractError("unknown arrow '" + id + "'");
}

bool Quiver::has_loop() const {
    return std::any_of(arrows.begin(), arrows.end(),
                       [](const Arrow& a) { return a.src == a.dst; });
}

void Quiver::validate() const {
    std::set<std::string> seen;
    for (const Arrow& a : arrows) {
        if (!seen.insert(a.id).second) throw ContractError("duplicate arrow id '" + a.id + "'");
        if (a.src < 0 || a.src >= vertex_count() || a.dst < 0 || a.dst >= vertex_count())
            throw ContractError("arrow '" + a.id + "' references an unknown vertex");
    }
    std::set<std::string> vseen;
    for (const std::string& v : vertices)
        if (!vseen.insert(v).second) throw ContractError("duplicate vertex '" + v + "'");
}

int Path::src(const Quiver& q) const { return q.arrows[arrows.front()].src; }
int Path::dst(const Quiver& q) const { return q.arrows[arrows.back()].dst; }

bool Path::composable(const Quiver& q) const {
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (q.arrows[arrows[i]].dst != q.arrows[arrows[i + 1]].src) return false;
    return true;
}

std::string Path::str(const Quiver& q) const {
    std::string s;
    for (int a : arrows) s += q.arrows[a].id;
    return s;
}

std::vector<std::pair<int, int>> deg2_monomials(const Quiver& q, int s, int t) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (q.arrows[a].src != s) continue;
        for (int b = 0; b < q.arrow_count(); ++b) {
            if (q.arrows[b].src != q.arrows[a].dst || q.arrows[b].dst != t) continue;
            out.emplace_back(a, b);
        }
    }
    return out;
}

std::vector<RelationTerm> parse_relation(const Quiver& q, const std::string& text) {
    std::vector<RelationTerm> terms;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw ContractError("expected '+' or '-' in relation '" + text + "'");
        }
        first = false;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != '+' && text[i] != '-')
            ++i;
        std::string token = text.substr(start, i - start);
        if (token.empty()) throw ContractError("dangling sign in relation '" + text + "'");
        Rat coeff(sign);
        std::string path_part = token;
        if (auto star = token.find('*'); star != std::string::npos) {
            coeff = sign * parse_rat(token.substr(0, star));
            path_part = token.substr(star + 1);
        }
        Path p;
        std::size_t pos = 0;
        while (pos <= path_part.size()) {
            std::size_t dot = path_part.find('.', pos);
            std::string id = path_part.substr(pos, dot == std::string::npos ? dot : dot - pos);
            p.arrows.push_back(q.arrow_index(id));
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
        terms.push_back({coeff, std::move(p)});
        skip_ws();
    }
    if (terms.empty()) throw ContractError("empty relation");
    return terms;
}

QuadraticPresentation QuadraticPresentation::make(
    Quiver q, const std::vector<std::vector<RelationTerm>>& relations) {
    q.validate();
    QuadraticPresentation p;
    p.quiver_ = std::move(q);
    const Quiver& qq = p.quiver_;

    std::map<std::pair<int, int>, std::vector<RatVec>> spans;
    for (const auto& rel : relations) {
        if (rel.empty()) continue;
        std::optional<std::pair<int, int>> comp;
        for (const RelationTerm& term : rel) {
            if (term.path.degree() != 2) throw ContractError("relation term is not quadratic");
            if (!term.path.composable(qq))
                throw ContractError("non-composable arrow pair '" + term.path.str(qq) + "'");
            std::pair<int, int> c{term.path.src(qq), term.path.dst(qq)};
            if (comp && *comp != c)
                throw ContractError("relation mixes components (" +
                                    qq.vertices[comp->first] + "->" + qq.vertices[comp->second] +
                                    " vs " + qq.vertices[c.first] + "->" + qq.vertices[c.second] +
                                    ")");
            comp = c;
        }
        auto monos = deg2_monomials(qq, comp->first, comp->second);
        RatVec v(monos.size(), Rat(0));
        for (const RelationTerm& term : rel) {
            std::pair<int, int> key{term.path.arrows[0], term.path.arrows[1]};
            auto it = std::find(monos.begin(), monos.end(), key);
            v[static_cast<std::size_t>(it - monos.begin())] += term.coeff;
        }
        spans[*comp].push_back(v);
    }
    for (auto& [comp, rows] : spans) {
        std::size_t n = deg2_monomials(qq, comp.first, comp.second).size();
        Subspace s = Subspace::from_span(RationalMatrix::from_rows(n, rows));
        if (s.dim() > 0) p.rel_.emplace(comp, s);
    }
    return p;
}

Subspace QuadraticPresentation::relations(int s, int t) const {
    auto it = rel_.find({s, t});
    if (it != rel_.end()) return it->second;
    return Subspace::zero(deg2_monomials(quiver_, s, t).size());
}

std::size_t QuadraticPresentation::relation_dim() const {
    std::size_t d = 0;
    for (const auto& [comp, s] : rel_) d += s.dim();
    return d;
}

QuadraticPresentation QuadraticPresentation::quadratic_dual() const {
    Quiver dq;
    dq.vertices = quiver_.vertices;
    for (const Arrow& a : quiver_.arrows) dq.arrows.push_back({a.id, a.dst, a.src});

    QuadraticPresentation p;
    p.quiver_ = dq;
    // The dual monomial a!b! (a reversed-arrow path t -> s) pairs with the
    // original monomial ba (s -> t); everything else pairs to zero.
    int n = quiver_.vertex_count();
    for (int t = 0; t < n; ++t) {
        for (int s = 0; s < n; ++s) {
            auto dual_monos = deg2_monomials(dq, t, s);
            if (dual_monos.empty()) continue;
            auto orig_monos = deg2_monomials(quiver_, s, t);
            Subspace perp = relations(s, t).annihilator();
            // permute coordinates: dual monomial (a, b) reads the perp
            // coordinate of the original monomial (b, a)
            RationalMatrix rows(perp.dim(), dual_monos.size());
            for (std::size_t i = 0; i < perp.dim(); ++i) {
                for (std::size_t j = 0; j < dual_monos.size(); ++j) {
                    std::pair<int, int> orig{dual_monos[j].second, dual_monos[j].first};
                    auto it = std::find(orig_monos.begin(), orig_monos.end(), orig);
                    rows.at(i, j) = perp.basis().at(i, static_cast<std::size_t>(it - orig_monos.begin()));
                }
            }
            Subspace srel = Subspace::from_span(rows);
            if (srel.dim() > 0) p.rel_.emplace(std::make_pair(t, s), srel);
        }
    }
    return p;
}

QuadraticPresentation QuadraticPresentation::opposite() const {
    Quiver oq;
    oq.vertices = quiver_.vertices;
    for (const Arrow& a : quiver_.arrows) oq.arrows.push_back({a.id, a.dst, a.src});

    QuadraticPresentation p;
    p.quiver_ = oq;
    for (const auto& [comp, sub] : rel_) {
        auto orig_monos = deg2_monomials(quiver_, comp.first, comp.second);
        auto op_monos = deg2_monomials(oq, comp.second, comp.first);
        RationalMatrix rows(sub.dim(), op_monos.size());
        for (std::size_t i = 0; i < sub.dim(); ++i) {
            for (std::size_t j = 0; j < orig_monos.size(); ++j) {
                std::pair<int, int> rev{orig_monos[j].second, orig_monos[j].first};
                auto it = std::find(op_monos.begin(), op_monos.end(), rev);
                rows.at(i, static_cast<std::size_t>(it - op_monos.begin())) = sub.basis().at(i, j);
            }
        }
        Subspace srel = Subspace::from_span(rows);
        if (srel.dim() > 0) p.rel_.emplace(std::make_pair(comp.second, comp.first), srel);
    }
    return p;
}

}  // namespace koszul
