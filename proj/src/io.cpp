#include "courant/io.hpp"

#include <fstream>
#include <sstream>

namespace courant::io {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, size_t i) { return where + "[" + std::to_string(i) + "]"; }

const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw InputError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where, "missing field \"" + key + "\"");
    return *it;
}

const json* maybe(const json& j, const std::string& key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& need_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    return j;
}

std::string need_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where, "expected a string");
    return j.get<std::string>();
}

size_t need_index(const json& j, size_t bound, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where, "expected a non-negative integer");
    auto v = j.get<size_t>();
    if (v >= bound) throw InputError(where, "index " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
    return v;
}

// An index given as an integer or as a name from `names`.
size_t need_named_index(const json& j, const std::vector<std::string>& names, const std::string& where) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        for (size_t k = 0; k < names.size(); ++k)
            if (names[k] == s) return k;
        throw InputError(where, "unknown name \"" + s + "\"");
    }
    return need_index(j, names.size(), where);
}

void check_version(const json& j, const std::string& where) {
    const json* v = maybe(j, "schema_version");
    if (!v) throw InputError(where, "missing field \"schema_version\"");
    if (!v->is_number_integer() || v->get<int>() != schema_version)
        throw InputError(at(where, "schema_version"), "unsupported version (expected " + std::to_string(schema_version) + ")");
}

Field field_of(const json& j, Field dflt, const std::string& where) {
    const json* f = maybe(j, "field");
    if (!f) return dflt;
    try {
        return parse_field(need_string(*f, at(where, "field")));
    } catch (const std::invalid_argument& e) {
        throw InputError(at(where, "field"), e.what());
    }
}

Element poly_from(const json& j, const Gens& g, const std::string& where) {
    try {
        if (j.is_number_integer()) return Element::constant(g, Scalar(j.get<long>()));
        Element e = parse_element(g, need_string(j, where));
        for (const auto& [m, c] : e.terms())
            if (!in_field(c, g->field())) throw InputError(where, "coefficient " + c.str() + " outside the field");
        return e;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
}

std::vector<std::string> names_of(const Gens& g) {
    std::vector<std::string> out;
    for (const auto& x : g->generators()) out.push_back(x.name);
    return out;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    need_array(j, where);
    for (size_t k = 0; k < j.size(); ++k) out.push_back(need_string(j[k], at(where, k)));
    return out;
}

Matrix square_matrix_from(const json& j, size_t n, Field field, const std::string& where) {
    Matrix m = matrix_from(j, field, where);
    if (m.rows() != n || m.cols() != n)
        throw InputError(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    return m;
}

CourantPresentation explicit_presentation(const json& j, Field field, const std::string& where) {
    std::vector<std::string> base;
    if (const json* b = maybe(j, "base")) base = string_list(*b, at(where, "base"));
    const json& r = need(j, "rank", where);
    if (!r.is_number_integer() || r.get<long long>() < 0) throw InputError(at(where, "rank"), "expected a non-negative integer");
    const size_t n = r.get<size_t>();
    Matrix metric = square_matrix_from(need(j, "metric", where), n, field, at(where, "metric"));
    CourantPresentation s;
    try {
        s = CourantPresentation::make(field, base, n, metric);
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    const auto base_names = names_of(s.base);

    if (const json* an = maybe(j, "anchor")) {
        need_array(*an, at(where, "anchor"));
        for (size_t k = 0; k < an->size(); ++k) {
            std::string w = at(at(where, "anchor"), k);
            const json& e = (*an)[k];
            size_t a = need_index(need(e, "a", w), n, at(w, "a"));
            size_t i = need_named_index(need(e, "i", w), base_names, at(w, "i"));
            s.anchor[a][i] += poly_from(need(e, "poly", w), s.base, at(w, "poly"));
        }
    }
    bool antisym = false;
    if (const json* f = maybe(j, "antisymmetric")) {
        if (!f->is_boolean()) throw InputError(at(where, "antisymmetric"), "expected a boolean");
        antisym = f->get<bool>();
    }
    if (const json* cs = maybe(j, "C")) {
        need_array(*cs, at(where, "C"));
        for (size_t k = 0; k < cs->size(); ++k) {
            std::string w = at(at(where, "C"), k);
            const json& e = (*cs)[k];
            size_t a = need_index(need(e, "a", w), n, at(w, "a"));
            size_t b = need_index(need(e, "b", w), n, at(w, "b"));
            size_t c = need_index(need(e, "c", w), n, at(w, "c"));
            Element v = poly_from(need(e, "poly", w), s.base, at(w, "poly"));
            if (antisym) {
                if (a == b || b == c || a == c) throw InputError(w, "antisymmetric entries need distinct indices");
                s.set_C_antisym(a, b, c, v);
            } else {
                s.C[a][b][c] += v;
            }
        }
    }
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    return s;
}

Matrix kappa_from(const json& j, const LieAlgebra& g, Field field, const std::string& where) {
    const json* k = maybe(j, "kappa");
    if (!k) return Matrix::identity(g.dim());
    return square_matrix_from(*k, g.dim(), field, at(where, "kappa"));
}

json checks_to(const std::vector<MatchedCheck>& cs) {
    json out = json::array();
    for (const auto& c : cs) {
        json e{{"name", c.name}, {"statement", matched_statement(c.name)}, {"ok", c.ok}};
        if (!c.ok) e["witness"] = c.witness;
        if (c.uncertain) e["uncertain"] = true;
        out.push_back(e);
    }
    return out;
}

json module_to(const ModuleRank& m) {
    json j{{"rank", m.rank}, {"freeness", m.freeness}};
    if (!m.torsion.empty()) j["torsion"] = m.torsion;
    return j;
}

std::string bidegree_key(const Bidegree& b) { return std::to_string(b.first) + "," + std::to_string(b.second); }

}  // namespace

json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto cut = msg.find("parse error");
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col),
                         cut == std::string::npos ? msg : msg.substr(cut));
    }
}

Scalar scalar_from(const json& j, Field field, const std::string& where) {
    Scalar s;
    try {
        if (j.is_number_integer()) {
            s = Scalar(j.get<long>());
        } else if (j.is_string()) {
            s = Scalar::parse(j.get<std::string>());
        } else if (j.is_object()) {
            Scalar re = Scalar::parse(need_string(need(j, "re", where), at(where, "re")));
            Scalar im = Scalar::parse(need_string(need(j, "im", where), at(where, "im")));
            if (!re.is_real() || !im.is_real()) throw InputError(where, "re and im must be rational");
            s = re + im * Scalar::i();
        } else {
            throw InputError(where, "expected a rational string, an integer or {\"re\",\"im\"}");
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    if (!in_field(s, field)) throw InputError(where, s.str() + " is not in " + field_name(field));
    return s;
}

json scalar_to(const Scalar& s) {
    if (s.is_real()) return s.str();
    return json{{"re", Scalar(s.re()).str()}, {"im", Scalar(s.im()).str()}};
}

Matrix matrix_from(const json& j, Field field, const std::string& where) {
    need_array(j, where);
    const size_t rows = j.size();
    size_t cols = 0;
    for (size_t r = 0; r < rows; ++r) {
        need_array(j[r], at(where, r));
        if (r == 0) cols = j[r].size();
        if (j[r].size() != cols) throw InputError(at(where, r), "ragged matrix");
    }
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m(r, c) = scalar_from(j[r][c], field, at(at(where, r), c));
    return m;
}

json matrix_to(const Matrix& m) {
    json out = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to(m(r, c)));
        out.push_back(row);
    }
    return out;
}

LieAlgebra lie_from(const json& j, Field field, const std::string& where) {
    auto names = string_list(need(j, "names", where), at(where, "names"));
    LieAlgebra g;
    try {
        g = LieAlgebra::make(names, field);
    } catch (const std::exception& e) {
        throw InputError(at(where, "names"), e.what());
    }
    if (const json* br = maybe(j, "brackets")) {
        need_array(*br, at(where, "brackets"));
        for (size_t k = 0; k < br->size(); ++k) {
            std::string w = at(at(where, "brackets"), k);
            const json& e = (*br)[k];
            size_t x = need_named_index(need(e, "x", w), names, at(w, "x"));
            size_t y = need_named_index(need(e, "y", w), names, at(w, "y"));
            if (x == y) throw InputError(w, "bracket of a generator with itself");
            const json& val = need(e, "value", w);
            if (!val.is_object()) throw InputError(at(w, "value"), "expected an object name -> coefficient");
            Vec v(names.size());
            for (const auto& [name, c] : val.items()) {
                size_t z = need_named_index(json(name), names, at(w, "value"));
                v[z] += scalar_from(c, field, at(at(w, "value"), name));
            }
            g.set(x, y, v);
        }
    }
    return g;
}

json lie_to(const LieAlgebra& g) {
    json br = json::array();
    for (size_t a = 0; a < g.dim(); ++a)
        for (size_t b = a + 1; b < g.dim(); ++b) {
            json v = json::object();
            for (size_t c = 0; c < g.dim(); ++c)
                if (!g.f[a][b][c].is_zero()) v[g.names[c]] = scalar_to(g.f[a][b][c]);
            if (!v.empty()) br.push_back(json{{"x", g.names[a]}, {"y", g.names[b]}, {"value", v}});
        }
    return json{{"field", field_name(g.field)}, {"names", g.names}, {"brackets", br}};
}

CourantPresentation presentation_from(const json& j, Field default_field, const std::string& where) {
    if (!j.is_object()) throw InputError(where, "expected an object");
    Field field = field_of(j, default_field, where);
    std::string kind = "presentation";
    if (const json* k = maybe(j, "kind")) kind = need_string(*k, at(where, "kind"));
    if (kind == "presentation") return explicit_presentation(j, field, where);

    LieAlgebra g = lie_from(need(j, "algebra", where), field, at(where, "algebra"));
    try {
        if (kind == "quadratic_lie") return quadratic_lie_algebra(g, kappa_from(j, g, field, where));
        if (kind == "alekseev_double") return alekseev_double(g, kappa_from(j, g, field, where));
        if (kind == "drinfeld_double") {
            LieBialgebra b{g, lie_from(need(j, "dual", where), field, at(where, "dual"))};
            if (b.dual.dim() != g.dim()) throw InputError(at(where, "dual"), "dimension differs from the algebra");
            return drinfeld_double(b);
        }
        if (kind == "twisted_dorfman") {
            CEAlgebra ce(g);
            const json* hj = maybe(j, "h3");
            Element h = hj ? poly_from(*hj, ce.theta, at(where, "h3")) : Element(ce.theta);
            return twisted_dorfman(g, h);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    throw InputError(at(where, "kind"), "unknown kind \"" + kind + "\"");
}

json presentation_to(const CourantPresentation& s) {
    json anchor = json::array(), C = json::array();
    const auto names = names_of(s.base);
    for (size_t a = 0; a < s.rank; ++a)
        for (size_t i = 0; i < s.base_dim(); ++i)
            if (!s.anchor[a][i].is_zero())
                anchor.push_back(json{{"a", a}, {"i", names[i]}, {"poly", s.anchor[a][i].str()}});
    for (size_t a = 0; a < s.rank; ++a)
        for (size_t b = 0; b < s.rank; ++b)
            for (size_t c = 0; c < s.rank; ++c)
                if (!s.C[a][b][c].is_zero())
                    C.push_back(json{{"a", a}, {"b", b}, {"c", c}, {"poly", s.C[a][b][c].str()}});
    return json{{"schema_version", schema_version},
                {"field", field_name(s.field)},
                {"base", names},
                {"rank", s.rank},
                {"metric", matrix_to(s.metric)},
                {"anchor", anchor},
                {"C", C}};
}

MatchedPair matched_from(const json& j, Field default_field) {
    check_version(j, "$");
    Field field = field_of(j, default_field, "$");
    CourantPresentation e1 = presentation_from(need(j, "E1", "$"), field, "$.E1");
    CourantPresentation e2 = presentation_from(need(j, "E2", "$"), field, "$.E2");
    if (e1.field != e2.field) throw InputError("$", "E1 and E2 have different fields");
    if (names_of(e1.base) != names_of(e2.base)) throw InputError("$", "E1 and E2 have different bases");
    // one shared generator set, so sections of both live in the same ring
    e2.base = e1.base;
    for (auto& row : e2.anchor)
        for (auto& v : row) v = v.rebase(e1.base);
    for (auto& m : e2.C)
        for (auto& row : m)
            for (auto& v : row) v = v.rebase(e1.base);

    MatchedPair mp;
    try {
        mp = MatchedPair::make(e1, e2);
    } catch (const std::exception& e) {
        throw InputError("$", e.what());
    }
    const size_t n1 = mp.n1(), n2 = mp.n2();
    if (const json* r = maybe(j, "conn_right")) {
        need_array(*r, "$.conn_right");
        for (size_t k = 0; k < r->size(); ++k) {
            std::string w = at("$.conn_right", k);
            const json& e = (*r)[k];
            size_t a = need_index(need(e, "a", w), n1, at(w, "a"));
            size_t al = need_index(need(e, "alpha", w), n2, at(w, "alpha"));
            size_t be = need_index(need(e, "beta", w), n2, at(w, "beta"));
            mp.right[a][al][be] += poly_from(need(e, "poly", w), e1.base, at(w, "poly"));
        }
    }
    if (const json* l = maybe(j, "conn_left")) {
        need_array(*l, "$.conn_left");
        for (size_t k = 0; k < l->size(); ++k) {
            std::string w = at("$.conn_left", k);
            const json& e = (*l)[k];
            size_t al = need_index(need(e, "alpha", w), n2, at(w, "alpha"));
            size_t a = need_index(need(e, "a", w), n1, at(w, "a"));
            size_t b = need_index(need(e, "b", w), n1, at(w, "b"));
            mp.left[al][a][b] += poly_from(need(e, "poly", w), e1.base, at(w, "poly"));
        }
    }
    try {
        mp.validate();
    } catch (const std::exception& e) {
        throw InputError("$", e.what());
    }
    return mp;
}

json matched_to(const MatchedPair& mp) {
    json right = json::array(), left = json::array();
    for (size_t a = 0; a < mp.n1(); ++a)
        for (size_t al = 0; al < mp.n2(); ++al)
            for (size_t be = 0; be < mp.n2(); ++be)
                if (!mp.right[a][al][be].is_zero())
                    right.push_back(json{{"a", a}, {"alpha", al}, {"beta", be}, {"poly", mp.right[a][al][be].str()}});
    for (size_t al = 0; al < mp.n2(); ++al)
        for (size_t a = 0; a < mp.n1(); ++a)
            for (size_t b = 0; b < mp.n1(); ++b)
                if (!mp.left[al][a][b].is_zero())
                    left.push_back(json{{"alpha", al}, {"a", a}, {"b", b}, {"poly", mp.left[al][a][b].str()}});
    json e1 = presentation_to(mp.E1), e2 = presentation_to(mp.E2);
    e1.erase("schema_version");
    e2.erase("schema_version");
    return json{{"schema_version", schema_version}, {"field", field_name(mp.E1.field)}, {"E1", e1}, {"E2", e2},
                {"conn_right", right}, {"conn_left", left}};
}

SplitBaseModel split_from(const json& j, Field default_field) {
    check_version(j, "$");
    Field field = field_of(j, default_field, "$");
    std::vector<NaiveGenerator> naive;
    const json& ng = need_array(need(j, "naive_generators", "$"), "$.naive_generators");
    for (size_t k = 0; k < ng.size(); ++k) {
        std::string w = at("$.naive_generators", k);
        const json& d = need(ng[k], "degree", w);
        if (!d.is_number_integer()) throw InputError(at(w, "degree"), "expected an integer");
        naive.push_back({need_string(need(ng[k], "name", w), at(w, "name")), d.get<int>()});
    }
    std::vector<std::string> vars;
    if (const json* v = maybe(j, "vars")) {
        vars = string_list(*v, "$.vars");
    } else {
        const json& m = need(j, "n_vars", "$");
        if (!m.is_number_integer() || m.get<long long>() < 0) throw InputError("$.n_vars", "expected a non-negative integer");
        auto nv = m.get<size_t>();
        if (nv == 1) vars = {"t"};
        for (size_t k = 0; k < nv && nv > 1; ++k) vars.push_back("t" + std::to_string(k + 1));
    }
    SplitBaseModel model;
    try {
        model = SplitBaseModel::make(naive, vars, field);
    } catch (const std::exception& e) {
        throw InputError("$", e.what());
    }
    if (const json* s = maybe(j, "severa")) model.severa = poly_from(*s, model.gens, "$.severa");
    try {
        model.validate();
    } catch (const std::exception& e) {
        throw InputError("$.severa", e.what());
    }
    return model;
}

json report_to(const CourantReport& r) {
    json axioms = json::array();
    for (const auto& a : r.axioms) {
        json e{{"name", a.name}, {"ok", a.ok}};
        if (!a.ok) e["witness"] = a.witness;
        axioms.push_back(e);
    }
    json j{{"valid", r.valid()},
           {"hamiltonian", {{"self_bracket_zero", r.self_bracket_zero},
                            {"self_bracket", r.self_bracket},
                            {"round_trip", r.round_trip},
                            {"verdict", r.hamiltonian_verdict}}},
           {"axioms", axioms},
           {"axiom_verdict", r.axiom_verdict},
           {"routes_agree", r.agree}};
    if (!r.valid()) j["first_failure"] = r.first_failure();
    return j;
}

json report_to(const MatchedReport& r) {
    json j{{"ok", r.ok()},
           {"structure", checks_to(r.structure)},
           {"conditions", checks_to(r.conditions)},
           {"extra", checks_to(r.extra)}};
    if (!r.ok()) j["first_failure"] = r.first_failure();
    return j;
}

json report_to(const SplitCohomology& h) {
    json quotient = json::array(), total = json::array(), e4 = json::object();
    for (const auto& q : h.quotient) quotient.push_back(module_to(q));
    for (const auto& t : h.total) total.push_back(module_to(t));
    for (const auto& [b, m] : h.e4) e4[bidegree_key(b)] = module_to(m);
    json j{{"max_degree", h.max_degree},
           {"ranks", h.ranks()},
           {"total", total},
           {"quotient", quotient},
           {"killing", {{"rank", h.kil_rank}, {"freeness", h.kil_freeness}, {"locus", h.kil_locus}}},
           {"e4", e4}};
    if (!h.note.empty()) j["note"] = h.note;
    return j;
}

json report_to(const SheetTables& t) {
    json e2 = json::object(), e4 = json::object();
    for (const auto& [b, d] : t.e2) e2[bidegree_key(b)] = d;
    for (const auto& [b, m] : t.e4) e4[bidegree_key(b)] = module_to(m);
    return json{{"e2", e2},
                {"e3_equals_e2", t.e3_equals_e2},
                {"e4", e4},
                {"collapse_at_4", t.collapse_at_4},
                {"collapse_reason", t.collapse_reason}};
}

json report_to(const SpectralSequence& s) {
    json pages = json::array();
    for (const auto& p : s.pages) {
        json dims = json::object();
        for (const auto& [b, d] : p.dims)
            if (d) dims[bidegree_key(b)] = d;
        pages.push_back(json{{"r", p.r}, {"dims", dims}});
    }
    json einf = json::object();
    for (const auto& [b, d] : s.e_infinity)
        if (d) einf[bidegree_key(b)] = d;
    return json{{"lo", s.lo},
                {"h_dims", s.h_dims},
                {"pages", pages},
                {"e_infinity", einf},
                {"collapse_page", s.collapse_page},
                {"stable_page", s.stable_page},
                {"converges", s.converges}};
}

}  // namespace courant::io
