#include "accause/causal_model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "accause/parser.hpp"
#include "accause/propositional.hpp"

namespace accause {

ValueId Equation::evaluate(const Assignment& a) const {
    for (const EquationRow& row : rows) {
        if (eval_prop(row.guard, a)) return row.value;
    }
    return fallback;
}

CausalModel::CausalModel(std::string name, Signature sig, std::vector<Equation> equations)
    : name_(std::move(name)), sig_(std::move(sig)), eqs_(std::move(equations)) {
    if (eqs_.size() != sig_.num_endogenous()) {
        throw SemanticError("model '" + name_ + "' needs exactly one equation per endogenous variable");
    }
    compute_graph();
}

namespace {

std::size_t endo_pos(const Signature& sig, VarId v) {
    if (sig.is_exogenous(v) || static_cast<std::size_t>(v) >= sig.size()) {
        throw SemanticError("not an endogenous variable id: " + std::to_string(v));
    }
    return static_cast<std::size_t>(v) - sig.num_exogenous();
}

// Does F_Y vary with x for some setting of the other guard variables?
bool varies_with(const Equation& eq, VarId x, const std::vector<VarId>& inputs,
                 const Signature& sig) {
    std::vector<VarId> others;
    for (VarId v : inputs) {
        if (v != x) others.push_back(v);
    }
    Assignment a(sig.size(), 0);
    do {
        a[x] = 0;
        ValueId first = eq.evaluate(a);
        for (std::size_t xv = 1; xv < sig.range_size(x); ++xv) {
            a[x] = static_cast<ValueId>(xv);
            if (eq.evaluate(a) != first) return true;
        }
        a[x] = 0;
    } while (next_assignment(a, others, sig));
    return false;
}

}  // namespace

const Equation& CausalModel::equation(VarId endogenous) const {
    return eqs_.at(endo_pos(sig_, endogenous));
}

const std::vector<VarId>& CausalModel::parents(VarId y) const {
    return parents_.at(endo_pos(sig_, y));
}

bool CausalModel::depends_on(VarId y, VarId x) const {
    const auto& p = parents(y);
    return std::binary_search(p.begin(), p.end(), x);
}

int CausalModel::depth(VarId endogenous) const { return depth_.at(endo_pos(sig_, endogenous)); }

void CausalModel::compute_graph() {
    const std::size_t n = sig_.num_endogenous();
    parents_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        VarId y = static_cast<VarId>(sig_.num_exogenous() + i);
        const Equation& eq = eqs_[i];
        if (eq.fallback < 0 || static_cast<std::size_t>(eq.fallback) >= sig_.range_size(y)) {
            throw SemanticError("equation for '" + sig_.name(y) + "' has an out-of-range default");
        }
        std::set<VarId> inputs;
        for (const EquationRow& row : eq.rows) {
            if (row.value < 0 || static_cast<std::size_t>(row.value) >= sig_.range_size(y)) {
                throw SemanticError("equation for '" + sig_.name(y) + "' has an out-of-range value");
            }
            if (!is_propositional(row.guard)) {
                throw SemanticError("guard in equation for '" + sig_.name(y) + "' is not propositional");
            }
            inputs.merge(mentioned_vars(row.guard));
        }
        if (inputs.count(y)) {
            throw SemanticError("equation for '" + sig_.name(y) + "' refers to its own variable");
        }
        std::vector<VarId> in(inputs.begin(), inputs.end());
        for (VarId x : in) {
            if (varies_with(eq, x, in, sig_)) parents_[i].push_back(x);
        }
    }

    // Kahn's algorithm over endogenous edges, smallest id first.
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (VarId p : parents_[i]) {
            if (sig_.is_exogenous(p)) continue;
            std::size_t pi = endo_pos(sig_, p);
            children[pi].push_back(i);
            ++indegree[i];
        }
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.insert(i);
    }
    topo_.clear();
    while (!ready.empty()) {
        std::size_t i = *ready.begin();
        ready.erase(ready.begin());
        topo_.push_back(static_cast<VarId>(sig_.num_exogenous() + i));
        for (std::size_t c : children[i]) {
            if (--indegree[c] == 0) ready.insert(c);
        }
    }
    if (topo_.size() != n) {
        // Walk parent edges among the unfinished nodes until a node repeats.
        std::size_t start = 0;
        while (indegree[start] == 0) ++start;
        std::vector<std::size_t> path;
        std::vector<int> seen_at(n, -1);
        std::size_t cur = start;
        while (seen_at[cur] < 0) {
            seen_at[cur] = static_cast<int>(path.size());
            path.push_back(cur);
            for (VarId p : parents_[cur]) {
                if (sig_.is_exogenous(p)) continue;
                std::size_t pi = endo_pos(sig_, p);
                if (indegree[pi] > 0) {
                    cur = pi;
                    break;
                }
            }
        }
        std::vector<VarId> cycle;
        for (std::size_t k = static_cast<std::size_t>(seen_at[cur]); k < path.size(); ++k) {
            cycle.push_back(static_cast<VarId>(sig_.num_exogenous() + path[k]));
        }
        std::reverse(cycle.begin(), cycle.end());
        std::string desc;
        for (VarId v : cycle) desc += sig_.name(v) + " -> ";
        desc += sig_.name(cycle.front());
        throw CycleError("model '" + name_ + "' is not recursive: cycle " + desc, cycle);
    }

    depth_.assign(n, 0);
    for (VarId y : topo_) {
        std::size_t i = endo_pos(sig_, y);
        for (VarId p : parents_[i]) {
            if (!sig_.is_exogenous(p)) depth_[i] = std::max(depth_[i], depth_[endo_pos(sig_, p)] + 1);
        }
    }
}

Assignment CausalModel::solve(const Context& u, const Intervention& intervention) const {
    if (u.size() != sig_.num_exogenous()) {
        throw SemanticError("context does not assign every exogenous variable");
    }
    Assignment a(sig_.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0 || static_cast<std::size_t>(u[i]) >= sig_.range_size(static_cast<VarId>(i))) {
            throw SemanticError("context value out of range for '" + sig_.name(static_cast<VarId>(i)) + "'");
        }
        a[i] = u[i];
    }
    std::vector<ValueId> fixed(sig_.size(), -1);
    for (const Event& e : intervention) fixed[e.var] = e.value;
    for (VarId y : topo_) {
        a[y] = fixed[y] >= 0 ? fixed[y] : eqs_[endo_pos(sig_, y)].evaluate(a);
    }
    return a;
}

CausalModel CausalModel::intervene(const Intervention& asg) const {
    std::vector<Equation> eqs = eqs_;
    std::set<VarId> seen;
    for (const Event& e : asg) {
        if (sig_.is_exogenous(e.var)) {
            throw SemanticError("cannot intervene on exogenous variable '" + sig_.name(e.var) + "'");
        }
        if (!seen.insert(e.var).second) {
            throw SemanticError("variable '" + sig_.name(e.var) + "' set twice in intervention");
        }
        if (e.value < 0 || static_cast<std::size_t>(e.value) >= sig_.range_size(e.var)) {
            throw SemanticError("intervention value out of range for '" + sig_.name(e.var) + "'");
        }
        eqs[endo_pos(sig_, e.var)] = Equation::constant(e.value);
    }
    return CausalModel(name_, sig_, std::move(eqs));
}

std::size_t CausalModel::context_count() const {
    std::size_t n = 1;
    for (VarId v : sig_.exogenous_ids()) n *= sig_.range_size(v);
    return n;
}

Context CausalModel::context_at(std::size_t index) const {
    Context u(sig_.num_exogenous(), 0);
    for (std::size_t i = u.size(); i-- > 0;) {
        std::size_t r = sig_.range_size(static_cast<VarId>(i));
        u[i] = static_cast<ValueId>(index % r);
        index /= r;
    }
    return u;
}

std::size_t CausalModel::context_index(const Context& u) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        idx = idx * sig_.range_size(static_cast<VarId>(i)) + static_cast<std::size_t>(u[i]);
    }
    return idx;
}

std::vector<VarId> validate_recursive(const CausalModel& m) {
    // Rebuilding re-derives the graph from the equations and throws on cycles.
    std::vector<Equation> eqs;
    for (VarId y : m.signature().endogenous_ids()) eqs.push_back(m.equation(y));
    CausalModel fresh(m.name(), m.signature(), std::move(eqs));
    return fresh.topological_order();
}

// ---------------------------------------------------------------------------
// Satisfaction

void check_causal_fragment(const Formula& phi) {
    std::function<void(const Formula&, bool)> walk = [&](const Formula& f, bool under_intervention) {
        switch (f.kind()) {
            case FormulaKind::Counterfactual:
                if (under_intervention) {
                    throw SemanticError("counterfactual inside an intervention is outside L_ex(S)");
                }
                if (!is_propositional(f.child(0))) {
                    throw SemanticError("counterfactual antecedent must be propositional in causal models");
                }
                if (contains_counterfactual(f.child(1))) {
                    throw SemanticError("nested counterfactuals are not evaluable in causal models");
                }
                walk(f.child(1), true);
                return;
            case FormulaKind::Intervene:
                walk(f.child(0), true);
                return;
            default:
                for (const Formula& c : f.children()) walk(c, under_intervention);
        }
    };
    walk(phi, false);
}

namespace {

class CausalEvaluator {
  public:
    CausalEvaluator(const CausalModel& m, const Context& u) : m_(m), u_(u) {}

    bool eval(const Formula& f, const Intervention& cur, const Assignment& sol) const {
        switch (f.kind()) {
            case FormulaKind::Event:
                return sol[f.as_event().var] == f.as_event().value;
            case FormulaKind::Not:
                return !eval(f.child(0), cur, sol);
            case FormulaKind::And:
                for (const Formula& c : f.children()) {
                    if (!eval(c, cur, sol)) return false;
                }
                return true;
            case FormulaKind::Or:
                for (const Formula& c : f.children()) {
                    if (eval(c, cur, sol)) return true;
                }
                return false;
            case FormulaKind::Intervene: {
                Intervention merged = merge(cur, f.assignments());
                return eval(f.child(0), merged, m_.solve(u_, merged));
            }
            case FormulaKind::Counterfactual:
                return witness(f.child(0), f.child(1), cur).has_value();
        }
        return false;
    }

    std::optional<Intervention> witness(const Formula& antecedent, const Formula& consequent,
                                        const Intervention& cur) const {
        const Signature& sig = m_.signature();
        std::set<VarId> ys = free_endogenous(antecedent, sig);
        std::vector<VarId> y(ys.begin(), ys.end());
        std::vector<VarId> exo;
        for (VarId v : mentioned_vars(antecedent)) {
            if (sig.is_exogenous(v)) exo.push_back(v);
        }
        Assignment a(sig.size(), 0);
        do {
            // Is antecedent & Y=y consistent? Only the exogenous mentions remain free.
            Assignment probe = a;
            bool consistent = false;
            do {
                if (eval_prop(antecedent, probe)) {
                    consistent = true;
                    break;
                }
            } while (next_assignment(probe, exo, sig));
            if (!consistent) continue;
            Intervention asg;
            for (VarId v : y) asg.push_back(Event{v, a[v]});
            Intervention merged = merge(cur, asg);
            if (eval(consequent, merged, m_.solve(u_, merged))) return asg;
        } while (next_assignment(a, y, sig));
        return std::nullopt;
    }

  private:
    static Intervention merge(const Intervention& base, const Intervention& extra) {
        Intervention out;
        for (const Event& e : base) {
            bool overridden = std::any_of(extra.begin(), extra.end(),
                                          [&](const Event& x) { return x.var == e.var; });
            if (!overridden) out.push_back(e);
        }
        out.insert(out.end(), extra.begin(), extra.end());
        return out;
    }

    const CausalModel& m_;
    const Context& u_;
};

}  // namespace

bool eval_causal(const CausalModel& m, const Context& u, const Formula& phi) {
    check_causal_fragment(phi);
    CausalEvaluator ev(m, u);
    return ev.eval(phi, {}, m.solve(u));
}

std::optional<Intervention> counterfactual_witness(const CausalModel& m, const Context& u,
                                                   const Formula& antecedent,
                                                   const Formula& consequent) {
    check_causal_fragment(Formula::counterfactual(antecedent, consequent));
    return CausalEvaluator(m, u).witness(antecedent, consequent, {});
}

// ---------------------------------------------------------------------------
// .cm files

namespace {

std::vector<std::string> parse_value_set(TokenStream& ts) {
    std::vector<std::string> values;
    ts.expect(TokenKind::LBrace, "'{'");
    do {
        const Token& t = ts.peek();
        if (t.kind != TokenKind::Ident && t.kind != TokenKind::Number) ts.fail("expected a value");
        values.push_back(ts.next().text);
    } while (ts.accept(TokenKind::Comma));
    ts.expect(TokenKind::RBrace, "'}'");
    return values;
}

ValueId parse_value_of(TokenStream& ts, const Signature& sig, VarId v) {
    const Token& t = ts.peek();
    if (t.kind != TokenKind::Ident && t.kind != TokenKind::Number) ts.fail("expected a value");
    ts.next();
    auto id = sig.find_value(v, t.text);
    if (!id) ts.fail_at(t, "value '" + t.text + "' outside the range of '" + sig.name(v) + "'");
    return *id;
}

}  // namespace

CausalModel parse_model(std::string_view text) {
    TokenStream ts(tokenize(text));
    std::string name = "model";
    std::vector<Variable> exo, endo;
    std::vector<std::pair<Token, std::vector<Token>>> eq_slices;
    std::set<std::string> declared;

    while (!ts.at_end()) {
        const Token& kw = ts.expect(TokenKind::Ident, "'model', 'exo', 'var' or 'eq'");
        if (kw.text == "model") {
            name = ts.expect(TokenKind::Ident, "model name").text;
        } else if (kw.text == "exo" || kw.text == "var") {
            const Token& vname = ts.expect(TokenKind::Ident, "variable name");
            if (vname.text == "default" || vname.text == "true" || vname.text == "false") {
                ts.fail_at(vname, "'" + vname.text + "' is reserved");
            }
            if (!declared.insert(vname.text).second) {
                ts.fail_at(vname, "variable '" + vname.text + "' declared twice");
            }
            ts.expect(TokenKind::Colon, "':'");
            Variable v{vname.text, kw.text == "exo" ? VarKind::Exogenous : VarKind::Endogenous,
                       parse_value_set(ts)};
            std::set<std::string> uniq(v.values.begin(), v.values.end());
            if (uniq.size() != v.values.size()) ts.fail_at(vname, "duplicate value in range");
            (kw.text == "exo" ? exo : endo).push_back(std::move(v));
        } else if (kw.text == "eq") {
            Token target = ts.expect(TokenKind::Ident, "variable name");
            std::vector<Token> body;
            while (!ts.at_end() && ts.peek().kind != TokenKind::RBrace) body.push_back(ts.next());
            body.push_back(ts.expect(TokenKind::RBrace, "'}' closing the equation"));
            body.push_back(Token{TokenKind::End, "", ts.peek().line, ts.peek().column});
            eq_slices.emplace_back(target, std::move(body));
        } else {
            ts.fail_at(kw, "unknown statement '" + kw.text + "'");
        }
    }
    if (endo.empty()) throw ParseError("model declares no endogenous variables", 1, 1);

    Signature sig(std::move(exo), std::move(endo));
    std::vector<std::optional<Equation>> eqs(sig.num_endogenous());
    for (auto& [target, body] : eq_slices) {
        auto v = sig.find(target.text);
        if (!v) throw ParseError("equation for undeclared variable '" + target.text + "'", target.line, target.column);
        if (sig.is_exogenous(*v)) {
            throw ParseError("exogenous variable '" + target.text + "' cannot have an equation", target.line, target.column);
        }
        std::size_t pos = static_cast<std::size_t>(*v) - sig.num_exogenous();
        if (eqs[pos]) {
            throw ParseError("second equation for '" + target.text + "'", target.line, target.column);
        }
        TokenStream es(std::move(body));
        es.expect(TokenKind::Equals, "'='");
        const Token& c = es.expect(TokenKind::Ident, "'case'");
        if (c.text != "case") es.fail_at(c, "expected 'case'");
        es.expect(TokenKind::LBrace, "'{'");
        Equation eq;
        bool have_default = false;
        while (true) {
            if (es.peek().kind == TokenKind::Ident && es.peek().text == "default" &&
                es.peek(1).kind == TokenKind::Colon) {
                es.next();
                es.next();
                eq.fallback = parse_value_of(es, sig, *v);
                es.accept(TokenKind::Semicolon);
                have_default = true;
                break;
            }
            if (es.peek().kind == TokenKind::RBrace) break;
            Formula guard = parse_formula(es, sig);
            es.expect(TokenKind::Colon, "':' after guard");
            ValueId out = parse_value_of(es, sig, *v);
            es.expect(TokenKind::Semicolon, "';' after row");
            eq.rows.push_back(EquationRow{std::move(guard), out});
        }
        if (!have_default) es.fail("equation for '" + target.text + "' lacks a 'default' row");
        es.expect(TokenKind::RBrace, "'}'");
        eqs[pos] = std::move(eq);
    }
    std::vector<Equation> out;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (!eqs[i]) {
            throw ParseError("no equation for '" +
                                 sig.name(static_cast<VarId>(sig.num_exogenous() + i)) + "'",
                             1, 1);
        }
        out.push_back(std::move(*eqs[i]));
    }
    return CausalModel(name, std::move(sig), std::move(out));
}

CausalModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'", 0, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string write_model(const CausalModel& m) {
    const Signature& sig = m.signature();
    std::ostringstream out;
    out << "model " << m.name() << "\n";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const Variable& v = sig.var(static_cast<VarId>(i));
        out << (sig.is_exogenous(static_cast<VarId>(i)) ? "exo " : "var ") << v.name << " : {";
        for (std::size_t k = 0; k < v.values.size(); ++k) out << (k ? ", " : "") << v.values[k];
        out << "}\n";
    }
    for (VarId y : sig.endogenous_ids()) {
        const Equation& eq = m.equation(y);
        out << "eq " << sig.name(y) << " = case {";
        for (const EquationRow& row : eq.rows) {
            out << " " << to_string(row.guard, sig) << " : " << sig.value_name(y, row.value) << ";";
        }
        out << " default : " << sig.value_name(y, eq.fallback) << " }\n";
    }
    return out.str();
}

std::string model_to_dot(const CausalModel& m) {
    const Signature& sig = m.signature();
    std::ostringstream out;
    out << "digraph \"" << m.name() << "\" {\n";
    for (VarId u : sig.exogenous_ids()) out << "  \"" << sig.name(u) << "\" [shape=box];\n";
    for (VarId y : sig.endogenous_ids()) {
        out << "  \"" << sig.name(y) << "\";\n";
        for (VarId p : m.parents(y)) {
            out << "  \"" << sig.name(p) << "\" -> \"" << sig.name(y) << "\";\n";
        }
    }
    out << "}\n";
    return out.str();
}

Context parse_context(std::string_view text, const Signature& sig) {
    Context u(sig.num_exogenous(), -1);
    if (text.find('=') == std::string_view::npos) {
        if (sig.num_exogenous() != 1) {
            throw ParseError("bare context value needs exactly one exogenous variable", 1, 1);
        }
        std::string value(text);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front()))) value.erase(0, 1);
        auto id = sig.find_value(0, value);
        if (!id) throw ParseError("value '" + value + "' outside the range of '" + sig.name(0) + "'", 1, 1);
        u[0] = *id;
        return u;
    }
    for (const Event& e : parse_event_list(text, sig)) {
        if (!sig.is_exogenous(e.var)) {
            throw ParseError("context assigns endogenous variable '" + sig.name(e.var) + "'", 1, 1);
        }
        u[e.var] = e.value;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0) {
            throw ParseError("context omits exogenous variable '" + sig.name(static_cast<VarId>(i)) + "'", 1, 1);
        }
    }
    return u;
}

std::string context_to_string(const Context& u, const Signature& sig) {
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) out += ", ";
        out += sig.name(static_cast<VarId>(i)) + "=" + sig.value_name(static_cast<VarId>(i), u[i]);
    }
    return out;
}

}  // namespace accause
