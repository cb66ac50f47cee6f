#include "accause/cf_structure.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "accause/causal_model.hpp"
#include "accause/correspondence.hpp"
#include "accause/parser.hpp"

namespace accause {

TieredCloseness::TieredCloseness(std::size_t num_states, std::map<StateId, Tiers> explicit_tiers,
                                 std::shared_ptr<const Closeness> fallback)
    : n_(num_states), explicit_(std::move(explicit_tiers)), fallback_(std::move(fallback)) {}

const Tiers* TieredCloseness::explicit_for(StateId s) const {
    auto it = explicit_.find(s);
    return it == explicit_.end() ? nullptr : &it->second;
}

std::optional<Tiers> TieredCloseness::tiers(StateId s) const {
    Tiers out;
    std::vector<char> listed(n_, 0);
    if (const Tiers* ex = explicit_for(s)) {
        for (const auto& tier : *ex) {
            out.push_back(tier);
            for (StateId t : tier) {
                if (t >= 0 && static_cast<std::size_t>(t) < n_) listed[static_cast<std::size_t>(t)] = 1;
            }
        }
    } else {
        out.push_back({s});
        listed[static_cast<std::size_t>(s)] = 1;
    }
    std::optional<Tiers> rest;
    if (fallback_) rest = fallback_->tiers(s);
    if (rest) {
        for (const auto& tier : *rest) {
            std::vector<StateId> keep;
            for (StateId t : tier) {
                if (!listed[static_cast<std::size_t>(t)]) {
                    keep.push_back(t);
                    listed[static_cast<std::size_t>(t)] = 1;
                }
            }
            if (!keep.empty()) out.push_back(std::move(keep));
        }
    }
    std::vector<StateId> unranked;
    for (std::size_t t = 0; t < n_; ++t) {
        if (!listed[t]) unranked.push_back(static_cast<StateId>(t));
    }
    if (!unranked.empty()) out.push_back(std::move(unranked));
    return out;
}

bool TieredCloseness::at_least_as_close(StateId s, StateId t, StateId u) const {
    auto ts = tiers(s);
    std::size_t rt = ts->size(), ru = ts->size();
    for (std::size_t i = 0; i < ts->size(); ++i) {
        for (StateId x : (*ts)[i]) {
            if (x == t && rt == ts->size()) rt = i;
            if (x == u && ru == ts->size()) ru = i;
        }
    }
    return rt <= ru;
}

std::optional<Tiers> CostCloseness::tiers(StateId s) const {
    std::vector<std::pair<Cost, StateId>> keyed;
    keyed.reserve(n_);
    for (std::size_t t = 0; t < n_; ++t) keyed.emplace_back(cost_(s, static_cast<StateId>(t)), static_cast<StateId>(t));
    std::sort(keyed.begin(), keyed.end());
    Tiers out;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) out.emplace_back();
        out.back().push_back(keyed[i].second);
    }
    return out;
}

CfStructure::CfStructure(std::string name, Signature sig, std::vector<std::string> state_names,
                         std::vector<Assignment> interp, std::shared_ptr<const Closeness> order)
    : name_(std::move(name)),
      sig_(std::move(sig)),
      names_(std::move(state_names)),
      interp_(std::move(interp)),
      order_(std::move(order)) {
    if (names_.size() != interp_.size()) throw SemanticError("state names and interpretation differ in length");
    if (interp_.empty()) throw SemanticError("a structure needs at least one state");
    if (!order_) throw SemanticError("structure has no closeness order");
    for (std::size_t s = 0; s < interp_.size(); ++s) {
        const Assignment& a = interp_[s];
        if (a.size() != sig_.size()) {
            throw SemanticError("state '" + names_[s] + "' does not assign every variable");
        }
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (a[v] < 0 || static_cast<std::size_t>(a[v]) >= sig_.range_size(static_cast<VarId>(v))) {
                throw SemanticError("state '" + names_[s] + "' has an out-of-range value for " +
                                    sig_.name(static_cast<VarId>(v)));
            }
        }
        if (!by_name_.emplace(names_[s], static_cast<StateId>(s)).second) {
            throw SemanticError("duplicate state name '" + names_[s] + "'");
        }
        by_assignment_.emplace(a, static_cast<StateId>(s));
    }
}

std::optional<StateId> CfStructure::find_state(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<StateId> CfStructure::find_assignment(const Assignment& a) const {
    auto it = by_assignment_.find(a);
    if (it == by_assignment_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::optional<StructureViolation> check_tiers(const CfStructure& m, StateId s, const Tiers& tiers) {
    const std::size_t n = m.size();
    std::vector<char> seen(n, 0);
    for (const auto& tier : tiers) {
        for (StateId t : tier) {
            if (t < 0 || static_cast<std::size_t>(t) >= n) {
                return StructureViolation{StructureViolation::Kind::UnknownState, s, t, -1,
                                          "order for " + m.state_name(s) + " names an unknown state"};
            }
            if (seen[static_cast<std::size_t>(t)]) {
                return StructureViolation{StructureViolation::Kind::DuplicateRank, s, t, -1,
                                          "order for " + m.state_name(s) + " ranks " + m.state_name(t) +
                                              " twice"};
            }
            seen[static_cast<std::size_t>(t)] = 1;
        }
    }
    if (tiers.empty() || tiers.front().empty()) {
        return StructureViolation{StructureViolation::Kind::Centering, s, s, -1,
                                  m.state_name(s) + " is not its own closest state"};
    }
    for (StateId t : tiers.front()) {
        if (t != s) {
            return StructureViolation{StructureViolation::Kind::Centering, s, t, -1,
                                      m.state_name(t) + " is as close to " + m.state_name(s) + " as itself"};
        }
    }
    if (std::find(tiers.front().begin(), tiers.front().end(), s) == tiers.front().end()) {
        return StructureViolation{StructureViolation::Kind::Centering, s, tiers.front().front(), -1,
                                  m.state_name(s) + " is not in its own first tier"};
    }
    return std::nullopt;
}

}  // namespace

std::optional<StructureViolation> validate_structure(const CfStructure& m) {
    const std::size_t n = m.size();
    const Closeness& order = m.order();
    if (const auto* tiered = dynamic_cast<const TieredCloseness*>(&order)) {
        for (std::size_t s = 0; s < n; ++s) {
            if (const Tiers* ex = tiered->explicit_for(static_cast<StateId>(s))) {
                if (auto v = check_tiers(m, static_cast<StateId>(s), *ex)) return v;
            }
        }
    }
    for (std::size_t si = 0; si < n; ++si) {
        StateId s = static_cast<StateId>(si);
        if (auto tiers = order.tiers(s)) {
            if (auto v = check_tiers(m, s, *tiers)) return v;
            continue;
        }
        for (std::size_t t = 0; t < n; ++t) {
            StateId ti = static_cast<StateId>(t);
            if (!order.at_least_as_close(s, ti, ti)) {
                return StructureViolation{StructureViolation::Kind::Reflexivity, s, ti, ti,
                                          "not reflexive at " + m.state_name(ti)};
            }
            if (ti != s && (!order.at_least_as_close(s, s, ti) || order.at_least_as_close(s, ti, s))) {
                return StructureViolation{StructureViolation::Kind::Centering, s, ti, -1,
                                          m.state_name(ti) + " is not strictly farther from " +
                                              m.state_name(s) + " than itself"};
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!order.at_least_as_close(s, static_cast<StateId>(a), static_cast<StateId>(b))) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    if (order.at_least_as_close(s, static_cast<StateId>(b), static_cast<StateId>(c)) &&
                        !order.at_least_as_close(s, static_cast<StateId>(a), static_cast<StateId>(c))) {
                        return StructureViolation{StructureViolation::Kind::Transitivity, s,
                                                  static_cast<StateId>(a), static_cast<StateId>(c),
                                                  "not transitive via " + m.state_name(static_cast<StateId>(b))};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

const Tiers* CfEvaluator::tiers_for(StateId s) {
    auto it = tier_cache_.find(s);
    if (it == tier_cache_.end()) it = tier_cache_.emplace(s, m_.order().tiers(s)).first;
    return it->second ? &*it->second : nullptr;
}

std::vector<StateId> CfEvaluator::closest(StateId s, const Formula& phi) {
    if (const Tiers* tiers = tiers_for(s)) {
        for (const auto& tier : *tiers) {
            std::vector<StateId> hits;
            for (StateId t : tier) {
                if (eval(t, phi)) hits.push_back(t);
            }
            if (!hits.empty()) {
                std::sort(hits.begin(), hits.end());
                return hits;
            }
        }
        return {};
    }
    std::vector<StateId> cand;
    for (std::size_t t = 0; t < m_.size(); ++t) {
        if (eval(static_cast<StateId>(t), phi)) cand.push_back(static_cast<StateId>(t));
    }
    const Closeness& order = m_.order();
    std::vector<StateId> out;
    for (StateId t : cand) {
        bool dominated = false;
        for (StateId u : cand) {
            if (order.at_least_as_close(s, u, t) && !order.at_least_as_close(s, t, u)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(t);
    }
    return out;
}

bool CfEvaluator::any_state(const Formula& phi) {
    for (std::size_t t = 0; t < m_.size(); ++t) {
        if (eval(static_cast<StateId>(t), phi)) return true;
    }
    return false;
}

bool CfEvaluator::eval(StateId s, const Formula& phi) {
    switch (phi.kind()) {
        case FormulaKind::Event: {
            const Event& e = phi.as_event();
            return m_.interp(s).at(static_cast<std::size_t>(e.var)) == e.value;
        }
        case FormulaKind::Not:
            return !eval(s, phi.child(0));
        case FormulaKind::And:
            for (const Formula& c : phi.children()) {
                if (!eval(s, c)) return false;
            }
            return true;
        case FormulaKind::Or:
            for (const Formula& c : phi.children()) {
                if (eval(s, c)) return true;
            }
            return false;
        case FormulaKind::Intervene:
            throw SemanticError("interventions cannot be evaluated in a counterfactual structure");
        case FormulaKind::Counterfactual: {
            auto key = std::make_pair(phi.identity(), s);
            if (auto it = cf_memo_.find(key); it != cf_memo_.end()) return it->second;
            bool result = true;
            for (StateId t : closest(s, phi.child(0))) {
                if (!eval(t, phi.child(1))) {
                    result = false;
                    break;
                }
            }
            // Keeps the node alive so its address cannot be reused by another formula.
            if (pinned_.insert(phi.identity()).second) pinned_formulas_.push_back(phi);
            cf_memo_.emplace(key, result);
            return result;
        }
    }
    return false;
}

std::vector<StateId> closest_states(const CfStructure& m, StateId s, const Formula& phi) {
    CfEvaluator ev(m);
    return ev.closest(s, phi);
}

bool eval_cf(const CfStructure& m, StateId s, const Formula& phi) {
    if (contains_intervention(phi)) {
        throw SemanticError("interventions cannot be evaluated in a counterfactual structure");
    }
    CfEvaluator ev(m);
    return ev.eval(s, phi);
}

namespace {

std::vector<std::string> parse_value_names(TokenStream& ts) {
    std::vector<std::string> out;
    ts.expect(TokenKind::LBrace, "'{'");
    do {
        const Token& t = ts.peek();
        if (t.kind != TokenKind::Ident && t.kind != TokenKind::Number) ts.fail("expected a value");
        out.push_back(ts.next().text);
    } while (ts.accept(TokenKind::Comma));
    ts.expect(TokenKind::RBrace, "'}'");
    return out;
}

struct StructureHeader {
    std::string name = "structure";
    std::string model_ref;
};

// The header line carries a file path, which the formula tokenizer does not
// accept, so it is read by hand and blanked out before tokenizing the rest.
StructureHeader split_header(std::string& text) {
    StructureHeader h;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        std::string body = line.substr(0, line.find('#'));
        std::istringstream words(body);
        std::string first;
        if (words >> first) {
            if (first == "structure") {
                std::string name, over, ref, extra;
                if (!(words >> name)) throw ParseError("expected structure name", 1, 1);
                h.name = name;
                if (words >> over) {
                    if (over != "over" || !(words >> ref)) {
                        throw ParseError("expected 'over MODELFILE' after structure name", 1, 1);
                    }
                    h.model_ref = ref;
                }
                if (words >> extra) throw ParseError("unexpected '" + extra + "' in structure header", 1, 1);
                for (std::size_t i = pos; i < eol; ++i) text[i] = ' ';
            }
            break;
        }
        pos = eol + 1;
    }
    return h;
}

}  // namespace

CfStructure parse_structure(std::string_view input, const CfsLoadOptions& opts) {
    std::string text(input);
    StructureHeader header = split_header(text);
    // '-' is not a token; the hyphenated order name is rewritten in place.
    for (std::size_t at = text.find("weighted-violations"); at != std::string::npos;
         at = text.find("weighted-violations", at)) {
        text[at + 8] = '_';
    }

    std::optional<CausalModel> loaded;
    const CausalModel* model = opts.model;
    if (!header.model_ref.empty()) {
        std::filesystem::path p(header.model_ref);
        if (p.is_relative() && !opts.base_dir.empty()) p = std::filesystem::path(opts.base_dir) / p;
        loaded.emplace(load_model(p.string()));
        model = &*loaded;
    }

    TokenStream ts(tokenize(text));
    std::vector<Variable> exo, endo;
    struct PendingState {
        Token name;
        std::vector<std::pair<Token, Token>> values;
    };
    struct PendingOrder {
        Token base;
        std::vector<std::vector<Token>> tiers;
    };
    std::vector<PendingState> states;
    std::vector<PendingOrder> orders;
    bool derived = false;

    while (!ts.at_end()) {
        const Token& kw = ts.expect(TokenKind::Ident, "'state', 'order', 'exo' or 'var'");
        if (kw.text == "exo" || kw.text == "var") {
            if (model) ts.fail_at(kw, "variables come from the referenced model");
            const Token& vname = ts.expect(TokenKind::Ident, "variable name");
            ts.expect(TokenKind::Colon, "':'");
            (kw.text == "exo" ? exo : endo)
                .push_back(Variable{vname.text, kw.text == "exo" ? VarKind::Exogenous : VarKind::Endogenous,
                                    parse_value_names(ts)});
        } else if (kw.text == "state") {
            PendingState st{ts.expect(TokenKind::Ident, "state name"), {}};
            ts.expect(TokenKind::LBrace, "'{'");
            do {
                Token var = ts.expect(TokenKind::Ident, "variable name");
                ts.expect(TokenKind::Equals, "'='");
                const Token& val = ts.peek();
                if (val.kind != TokenKind::Ident && val.kind != TokenKind::Number) ts.fail("expected a value");
                st.values.emplace_back(var, ts.next());
            } while (ts.accept(TokenKind::Comma));
            ts.expect(TokenKind::RBrace, "'}'");
            states.push_back(std::move(st));
        } else if (kw.text == "order") {
            const Token& base = ts.expect(TokenKind::Ident, "state name or 'derived'");
            if (base.text == "derived" && ts.peek().kind == TokenKind::Ident) {
                const Token& how = ts.next();
                if (how.text != "weighted_violations") {
                    ts.fail_at(how, "unknown derived order '" + how.text + "'");
                }
                derived = true;
                continue;
            }
            PendingOrder ord{base, {}};
            ts.expect(TokenKind::Colon, "':'");
            do {
                ts.expect(TokenKind::LBrace, "'{'");
                std::vector<Token> tier;
                do {
                    tier.push_back(ts.expect(TokenKind::Ident, "state name"));
                } while (ts.accept(TokenKind::Comma));
                ts.expect(TokenKind::RBrace, "'}'");
                ord.tiers.push_back(std::move(tier));
            } while (ts.accept(TokenKind::Semicolon));
            orders.push_back(std::move(ord));
        } else {
            ts.fail_at(kw, "unknown statement '" + kw.text + "'");
        }
    }

    std::optional<Signature> sig_holder;
    if (model) {
        sig_holder = model->signature();
    } else {
        if (endo.empty()) throw ParseError("structure declares no endogenous variables and names no model", 1, 1);
        sig_holder.emplace(std::move(exo), std::move(endo));
    }
    const Signature& sig = *sig_holder;

    std::vector<std::string> names;
    std::vector<Assignment> interp;
    std::set<std::string> seen_names;
    for (const PendingState& st : states) {
        if (!seen_names.insert(st.name.text).second) {
            throw ParseError("state '" + st.name.text + "' defined twice", st.name.line, st.name.column);
        }
        Assignment a(sig.size(), -1);
        for (const auto& [var, val] : st.values) {
            auto v = sig.find(var.text);
            if (!v) throw ParseError("unknown variable '" + var.text + "'", var.line, var.column);
            auto x = sig.find_value(*v, val.text);
            if (!x) {
                throw ParseError("value '" + val.text + "' is not in the range of " + var.text, val.line,
                                 val.column);
            }
            if (a[static_cast<std::size_t>(*v)] != -1) {
                throw ParseError("variable '" + var.text + "' assigned twice", var.line, var.column);
            }
            a[static_cast<std::size_t>(*v)] = *x;
        }
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (a[v] == -1) {
                throw ParseError("state '" + st.name.text + "' does not assign " + sig.name(static_cast<VarId>(v)),
                                 st.name.line, st.name.column);
            }
        }
        names.push_back(st.name.text);
        interp.push_back(std::move(a));
    }
    if (names.empty()) throw ParseError("structure has no states", 1, 1);

    auto lookup = [&](const Token& t) -> StateId {
        auto it = std::find(names.begin(), names.end(), t.text);
        if (it == names.end()) throw ParseError("unknown state '" + t.text + "'", t.line, t.column);
        return static_cast<StateId>(it - names.begin());
    };
    std::map<StateId, Tiers> explicit_tiers;
    for (const PendingOrder& ord : orders) {
        StateId s = lookup(ord.base);
        if (explicit_tiers.count(s)) {
            throw ParseError("second order for state '" + ord.base.text + "'", ord.base.line, ord.base.column);
        }
        Tiers tiers{{s}};
        for (const auto& tier : ord.tiers) {
            std::vector<StateId> ids;
            for (const Token& t : tier) ids.push_back(lookup(t));
            tiers.push_back(std::move(ids));
        }
        explicit_tiers.emplace(s, std::move(tiers));
    }

    std::shared_ptr<const Closeness> fallback;
    if (derived) {
        if (!model) throw ParseError("a derived order needs a causal model", 1, 1);
        fallback = std::make_shared<WeightedViolationCloseness>(*model, interp);
    }
    std::shared_ptr<const Closeness> order;
    if (explicit_tiers.empty() && fallback) {
        order = fallback;
    } else {
        order = std::make_shared<TieredCloseness>(names.size(), std::move(explicit_tiers), fallback);
    }
    return CfStructure(header.name, sig, std::move(names), std::move(interp), std::move(order));
}

CfStructure load_structure(const std::string& path, const CausalModel* model) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open structure file '" + path + "'", 0, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    CfsLoadOptions opts;
    opts.base_dir = std::filesystem::path(path).parent_path().string();
    opts.model = model;
    return parse_structure(buf.str(), opts);
}

std::string write_structure(const CfStructure& m, const std::string& model_ref) {
    const Signature& sig = m.signature();
    std::ostringstream out;
    out << "structure " << m.name();
    if (!model_ref.empty()) out << " over " << model_ref;
    out << "\n";
    if (model_ref.empty()) {
        for (std::size_t i = 0; i < sig.size(); ++i) {
            const Variable& v = sig.var(static_cast<VarId>(i));
            out << (sig.is_exogenous(static_cast<VarId>(i)) ? "exo " : "var ") << v.name << " : {";
            for (std::size_t k = 0; k < v.values.size(); ++k) out << (k ? ", " : "") << v.values[k];
            out << "}\n";
        }
    }
    for (std::size_t s = 0; s < m.size(); ++s) {
        out << "state " << m.state_name(static_cast<StateId>(s)) << " {";
        const Assignment& a = m.interp(static_cast<StateId>(s));
        for (std::size_t v = 0; v < a.size(); ++v) {
            out << (v ? ", " : " ") << sig.name(static_cast<VarId>(v)) << "="
                << sig.value_name(static_cast<VarId>(v), a[v]);
        }
        out << " }\n";
    }
    auto write_tiers = [&](StateId s, const Tiers& tiers) {
        if (tiers.size() <= 1) return;
        out << "order " << m.state_name(s) << " :";
        for (std::size_t i = 1; i < tiers.size(); ++i) {
            out << (i > 1 ? "; {" : " {");
            for (std::size_t k = 0; k < tiers[i].size(); ++k) {
                out << (k ? ", " : "") << m.state_name(tiers[i][k]);
            }
            out << "}";
        }
        out << "\n";
    };
    const Closeness& order = m.order();
    if (dynamic_cast<const WeightedViolationCloseness*>(&order)) {
        out << "order derived weighted-violations\n";
    } else if (const auto* tiered = dynamic_cast<const TieredCloseness*>(&order)) {
        const Closeness* fb = tiered->fallback();
        if (fb && !dynamic_cast<const WeightedViolationCloseness*>(fb)) {
            throw SemanticError("only derived fallback orders can be written to a structure file");
        }
        if (fb) out << "order derived weighted-violations\n";
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (const Tiers* ex = tiered->explicit_for(static_cast<StateId>(s))) {
                write_tiers(static_cast<StateId>(s), *ex);
            }
        }
    } else {
        for (std::size_t s = 0; s < m.size(); ++s) {
            auto tiers = order.tiers(static_cast<StateId>(s));
            if (!tiers) throw SemanticError("partial closeness orders cannot be written to a structure file");
            write_tiers(static_cast<StateId>(s), *tiers);
        }
    }
    return out.str();
}

}  // namespace accause
