#include "nilpot/io.hpp"

#include <cstdlib>
#include <fstream>

namespace nilpot {

ordered_json lie_to_json(const LieElement &u)
{
    ordered_json j;
    j["n"] = u.basis->n;
    j["c"] = u.basis->c;
    ordered_json terms = ordered_json::array();
    for (const auto &[i, q] : u.terms)
        terms.push_back({u.basis->elements[i].word, rat_str(q)});
    j["terms"] = std::move(terms);
    return j;
}

LieElement lie_from_json(const HallBasis &basis, const ordered_json &j)
{
    if (!j.contains("terms"))
        throw std::invalid_argument("lie_from_json: missing terms");
    if (j.contains("n") && j["n"].get<int>() != basis.n)
        throw std::invalid_argument("lie_from_json: rank mismatch");
    LieElement u = lie_zero(basis);
    for (const auto &t : j["terms"]) {
        Word w = t.at(0).get<std::string>();
        int idx = basis.index_of(w);
        if (idx < 0)
            throw std::invalid_argument("lie_from_json: word '" + w + "' not in the basis");
        add_term(u, idx, rat_parse(t.at(1).get<std::string>()));
    }
    return u;
}

ordered_json quotient_to_json(const QuotientAlgebra &q)
{
    const HallBasis &b = q.ctx->basis;
    ordered_json j;
    j["ambient"] = {{"n", b.n}, {"c", b.c}};
    j["ideal_rank"] = q.ideal.rank();
    ordered_json adapted = ordered_json::array();
    for (int i : q.adapted)
        adapted.push_back(b.elements[i].word);
    j["adapted_basis"] = std::move(adapted);
    ordered_json rels = ordered_json::array();
    for (const auto &row : q.ideal.span.rows) {
        // pivot word rewrites to minus the rest of the row
        ordered_json terms = ordered_json::array();
        for (size_t k = 1; k < row.terms.size(); ++k)
            terms.push_back({b.elements[row.terms[k].first].word,
                             rat_str(-row.terms[k].second)});
        rels.push_back({b.elements[row.leading_index()].word, std::move(terms)});
    }
    j["relations"] = std::move(rels);
    return j;
}

ordered_json table_to_json(const HallBasis &basis, const StructureTable &table)
{
    ordered_json j;
    j["format"] = 1;
    j["n"] = basis.n;
    j["c"] = basis.c;
    ordered_json be = ordered_json::array();
    for (const auto &e : basis.elements) {
        ordered_json el;
        el["word"] = e.word;
        if (e.degree > 1)
            el["bracketing"] = {e.left, e.right};
        be.push_back(std::move(el));
    }
    j["basis"] = std::move(be);
    ordered_json tbl = ordered_json::object();
    for (int i = 0; i < basis.dim(); ++i)
        for (int k = i + 1; k < basis.dim(); ++k) {
            auto it = table.entries.find(StructureTable::key(i, k));
            if (it == table.entries.end())
                continue;
            ordered_json terms = ordered_json::array();
            for (const auto &[x, q] : it->second)
                terms.push_back({x, rat_str(q)});
            tbl[std::to_string(i) + "," + std::to_string(k)] = std::move(terms);
        }
    j["table"] = std::move(tbl);
    return j;
}

StructureTable table_from_json(const HallBasis &basis, const ordered_json &j)
{
    if (!j.contains("format") || j["format"].get<int>() != 1)
        throw std::invalid_argument("table cache: unsupported format");
    if (j["n"].get<int>() != basis.n || j["c"].get<int>() != basis.c)
        throw std::invalid_argument("table cache: (n,c) mismatch");
    const auto &be = j["basis"];
    if (int(be.size()) != basis.dim())
        throw std::invalid_argument("table cache: basis size mismatch");
    for (int i = 0; i < basis.dim(); ++i) {
        if (be[i]["word"].get<std::string>() != basis.elements[i].word)
            throw std::invalid_argument("table cache: basis word mismatch");
        if (basis.elements[i].degree > 1) {
            const auto &br = be[i]["bracketing"];
            if (br.at(0).get<int>() != basis.elements[i].left ||
                br.at(1).get<int>() != basis.elements[i].right)
                throw std::invalid_argument("table cache: bracketing mismatch");
        }
    }
    StructureTable t;
    t.basis = &basis;
    for (const auto &[key, terms] : j["table"].items()) {
        auto comma = key.find(',');
        int i = std::stoi(key.substr(0, comma));
        int k = std::stoi(key.substr(comma + 1));
        SparseVec sv;
        for (const auto &term : terms)
            sv.emplace_back(term.at(0).get<int>(), rat_parse(term.at(1).get<std::string>()));
        t.entries[StructureTable::key(i, k)] = std::move(sv);
    }
    return t;
}

std::optional<std::filesystem::path> resolve_cache_dir(
    const std::optional<std::filesystem::path> &explicit_dir)
{
    if (explicit_dir)
        return explicit_dir;
    if (const char *env = std::getenv("NILPOT_CACHE"))
        return std::filesystem::path(env);
    if (const char *xdg = std::getenv("XDG_CACHE_HOME"))
        return std::filesystem::path(xdg) / "nilpot";
    if (const char *home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "nilpot";
    return std::nullopt;
}

std::filesystem::path cache_file_path(const std::filesystem::path &dir, int n, int c)
{
    return dir / ("table_n" + std::to_string(n) + "_c" + std::to_string(c) + ".json");
}

StructureTable build_structure_table_cached(const HallBasis &basis,
                                            const std::optional<std::filesystem::path> &dir,
                                            TableEngine engine)
{
    if (dir) {
        std::filesystem::path file = cache_file_path(*dir, basis.n, basis.c);
        if (std::filesystem::exists(file)) {
            std::ifstream in(file);
            ordered_json j = ordered_json::parse(in);
            StructureTable t = table_from_json(basis, j);
            if (!jacobi_certify(t))
                throw std::runtime_error("table cache: Jacobi certification failed for " +
                                         file.string());
            return t;
        }
    }
    StructureTable t = build_structure_table(basis, engine);
    if (dir) {
        std::error_code ec;
        std::filesystem::create_directories(*dir, ec);
        if (!ec) {
            std::filesystem::path file = cache_file_path(*dir, basis.n, basis.c);
            std::filesystem::path tmp = file;
            tmp += ".tmp";
            {
                std::ofstream out(tmp);
                out << table_to_json(basis, t).dump();
            }
            std::filesystem::rename(tmp, file, ec);
        }
    }
    return t;
}

} // namespace nilpot
