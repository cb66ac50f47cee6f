#include "accause/formula.hpp"

namespace accause {

Formula Formula::event(Event e) {
    Node n;
    n.kind = FormulaKind::Event;
    n.event = e;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negate(Formula f) {
    Node n;
    n.kind = FormulaKind::Not;
    n.children.push_back(std::move(f));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conj(std::vector<Formula> parts) {
    if (parts.size() == 1) return parts.front();
    Node n;
    n.kind = FormulaKind::And;
    n.children = std::move(parts);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disj(std::vector<Formula> parts) {
    if (parts.size() == 1) return parts.front();
    Node n;
    n.kind = FormulaKind::Or;
    n.children = std::move(parts);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conj(const std::vector<Event>& events) {
    std::vector<Formula> parts;
    parts.reserve(events.size());
    for (const Event& e : events) parts.push_back(event(e));
    return conj(std::move(parts));
}

Formula Formula::intervene(Intervention assignments, Formula body) {
    Node n;
    n.kind = FormulaKind::Intervene;
    n.assignments = std::move(assignments);
    n.children.push_back(std::move(body));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::counterfactual(Formula antecedent, Formula consequent) {
    Node n;
    n.kind = FormulaKind::Counterfactual;
    n.children.push_back(std::move(antecedent));
    n.children.push_back(std::move(consequent));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case FormulaKind::Event:
            return as_event() == other.as_event();
        case FormulaKind::Intervene:
            if (assignments() != other.assignments()) return false;
            break;
        default:
            break;
    }
    return children() == other.children();
}

std::string to_string(const Event& e, const Signature& sig) {
    return sig.name(e.var) + "=" + sig.value_name(e.var, e.value);
}

std::string to_string(const Intervention& asg, const Signature& sig) {
    std::string out = "[";
    for (std::size_t i = 0; i < asg.size(); ++i) {
        if (i) out += ", ";
        out += sig.name(asg[i].var) + "<-" + sig.value_name(asg[i].var, asg[i].value);
    }
    return out + "]";
}

namespace {

bool is_constant(const Formula& f) { return f.is_true() || f.is_false(); }

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string print(const Formula& f, const Signature& sig) {
    switch (f.kind()) {
        case FormulaKind::Event:
            return to_string(f.as_event(), sig);
        case FormulaKind::Not: {
            const Formula& c = f.child(0);
            if (c.kind() == FormulaKind::Event) {
                const Event& e = c.as_event();
                return sig.name(e.var) + "!=" + sig.value_name(e.var, e.value);
            }
            bool bare = c.kind() == FormulaKind::Not || c.kind() == FormulaKind::Intervene ||
                        is_constant(c);
            return "!" + (bare ? print(c, sig) : paren(print(c, sig)));
        }
        case FormulaKind::And: {
            if (f.children().empty()) return "true";
            std::string out;
            for (const Formula& c : f.children()) {
                if (!out.empty()) out += " & ";
                bool wrap = !is_constant(c) && (c.kind() == FormulaKind::And ||
                                                c.kind() == FormulaKind::Or ||
                                                c.kind() == FormulaKind::Counterfactual);
                out += wrap ? paren(print(c, sig)) : print(c, sig);
            }
            return out;
        }
        case FormulaKind::Or: {
            if (f.children().empty()) return "false";
            std::string out;
            for (const Formula& c : f.children()) {
                if (!out.empty()) out += " | ";
                bool wrap = !is_constant(c) && (c.kind() == FormulaKind::Or ||
                                                c.kind() == FormulaKind::Counterfactual);
                out += wrap ? paren(print(c, sig)) : print(c, sig);
            }
            return out;
        }
        case FormulaKind::Intervene: {
            const Formula& b = f.child(0);
            bool bare = b.kind() == FormulaKind::Event || b.kind() == FormulaKind::Not ||
                        b.kind() == FormulaKind::Intervene || is_constant(b);
            return to_string(f.assignments(), sig) + " " + (bare ? print(b, sig) : paren(print(b, sig)));
        }
        case FormulaKind::Counterfactual:
            return paren(print(f.child(0), sig)) + " ~> " + paren(print(f.child(1), sig));
    }
    return {};
}

}  // namespace

std::string to_string(const Formula& f, const Signature& sig) { return print(f, sig); }

bool is_propositional(const Formula& f) {
    if (f.kind() == FormulaKind::Intervene || f.kind() == FormulaKind::Counterfactual) return false;
    for (const Formula& c : f.children()) {
        if (!is_propositional(c)) return false;
    }
    return true;
}

bool contains_counterfactual(const Formula& f) {
    if (f.kind() == FormulaKind::Counterfactual) return true;
    for (const Formula& c : f.children()) {
        if (contains_counterfactual(c)) return true;
    }
    return false;
}

bool contains_intervention(const Formula& f) {
    if (f.kind() == FormulaKind::Intervene) return true;
    for (const Formula& c : f.children()) {
        if (contains_intervention(c)) return true;
    }
    return false;
}

std::optional<std::vector<Event>> as_event_conjunction(const Formula& f) {
    if (f.kind() == FormulaKind::Event) return std::vector<Event>{f.as_event()};
    if (f.kind() != FormulaKind::And) return std::nullopt;
    std::vector<Event> out;
    for (const Formula& c : f.children()) {
        if (c.kind() != FormulaKind::Event) return std::nullopt;
        out.push_back(c.as_event());
    }
    return out;
}

}  // namespace accause
