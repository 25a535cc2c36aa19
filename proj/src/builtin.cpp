#include "koszul/builtin.hpp"

namespace koszul::builtin {

QuadraticPresentation make_presentation(const std::vector<std::string>& vertices,
                                        const std::vector<std::string>& arrow_specs,
                                        const std::vector<std::string>& relation_specs) {
    Quiver q;
    q.vertices = vertices;
    for (const std::string& spec : arrow_specs) {
        auto colon = spec.find(':');
        auto gt = spec.find('>');
        if (colon == std::string::npos || gt == std::string::npos || gt < colon)
            throw ContractError("bad arrow spec '" + spec + "' (want id:src>dst)");
        Arrow a;
        a.id = spec.substr(0, colon);
        a.src = q.vertex_index(spec.substr(colon + 1, gt - colon - 1));
        a.dst = q.vertex_index(spec.substr(gt + 1));
        q.arrows.push_back(a);
    }
    std::vector<std::vector<RelationTerm>> rels;
    for (const std::string& r : relation_specs) rels.push_back(parse_relation(q, r));
    return QuadraticPresentation::make(q, rels);
}

QuadraticPresentation a_rs(int r, int s) {
    if (r < 1 || s < 1) throw ContractError("a_rs needs r, s >= 1");
    std::vector<std::string> arrows;
    std::vector<std::string> rels;
    for (int i = 1; i <= r; ++i) arrows.push_back("x" + std::to_string(i) + ":1>2");
    for (int j = 1; j <= s; ++j) arrows.push_back("y" + std::to_string(j) + ":2>1");
    for (int j = 1; j <= s; ++j)
        for (int i = 1; i <= r; ++i)
            rels.push_back("y" + std::to_string(j) + ".x" + std::to_string(i));
    auto p = make_presentation({"1", "2"}, arrows, rels);
    if (r == 1 && s == 1) {
        // the classic presentation writes the two arrows as plain x, y
        Quiver q;
        q.vertices = {"1", "2"};
        q.arrows = {{"x", 0, 1}, {"y", 1, 0}};
        return QuadraticPresentation::make(q, {parse_relation(q, "y.x")});
    }
    return p;
}

QuadraticPresentation sl3_quiver() {
    return make_presentation({"1", "2", "3"},
                             {"x1:1>2", "y1:2>1", "x2:2>3", "y2:3>2"},
                             {"x1.y1", "y1.x1 - x2.y2"});
}

QuadraticPresentation semisimple(int n) {
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back(std::to_string(i));
    return make_presentation(vs, {}, {});
}

QuadraticPresentation nonkoszul_counterexample() {
    return make_presentation({"1"}, {"x:1>1", "y:1>1"}, {"x.x", "y.y - x.y"});
}

}  // namespace koszul::builtin
