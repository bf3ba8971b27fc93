#include "pci/controlled_vocabulary.hpp"
#include "pci/graph.hpp"
#include "pci/labels.hpp"
#include "pci/vocabulary.hpp"

#include <map>
#include <set>

namespace pci {
namespace {

class Checker {
public:
    Checker(const Vocabulary& v, const ControlledVocabularySet* cvs)
        : v_(v), cvs_(cvs),
          discourse_type_(v.find(TypeKind::Theme, labels::kDiscourseType)),
          discourse_topic_(v.find(TypeKind::Nesting, labels::kDiscourseTopic)) {}

    void check(const ConceptualGraph& g, const std::string& prefix) {
        for (const auto& node : g.nodes()) check_node(g, node, prefix);
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            check_edge(g, g.edges()[i], "rel:" + prefix + "#" + std::to_string(i));
        }
    }

    ValidationReport take() { return std::move(report_); }

private:
    bool known(TypeId id, TypeKind kind) const { return id.kind() == kind && v_.contains(id); }

    void check_node(const ConceptualGraph& g, const ConceptNode& node, const std::string& prefix) {
        const std::string path = prefix + std::to_string(node.id.value);
        const std::string subject = "node:" + path;
        const bool type_ok = known(node.type, TypeKind::Theme);
        if (!type_ok) {
            report_.add(Severity::Error, ErrorCode::UnknownType, subject,
                        node.type.str() + " is not a concept type of the vocabulary");
        }
        check_referent(node.referent, subject);

        const bool is_discourse_type =
            type_ok && discourse_type_ && v_.subsumes(*discourse_type_, node.type);
        bool has_topic = false;
        for (const auto& nesting : node.nestings) {
            const std::string nest_subject = "nest:" + path + "/" + nesting.type.str();
            if (!known(nesting.type, TypeKind::Nesting)) {
                report_.add(Severity::Error, ErrorCode::UnknownType, nest_subject,
                            nesting.type.str() + " is not a nesting type of the vocabulary");
            } else if (discourse_topic_ && v_.subsumes(*discourse_topic_, nesting.type)) {
                has_topic = true;
                if (!is_discourse_type) {
                    report_.add(Severity::Error, ErrorCode::MisplacedTopic, nest_subject,
                                "topic nesting on a concept that is not a Discourse Type");
                }
            }
            if (nesting.graph.empty()) {
                report_.add(Severity::Warning, ErrorCode::EmptyNesting, nest_subject,
                            "nesting holds an empty graph");
            }
            check(nesting.graph, path + "/" + nesting.type.str() + "/");
        }
        if (is_discourse_type && discourse_topic_ && !has_topic) {
            const bool narrative = g.kind() == GraphKind::Narrative;
            report_.add(narrative ? Severity::Error : Severity::Warning, ErrorCode::MissingTopic,
                        subject, "Discourse Type concept without a topic nesting");
        }
    }

    void check_referent(const Referent& r, const std::string& subject) {
        if (r.is_generic()) {
            if (!r.keyword.empty() || r.language || r.vocabulary) {
                report_.add(Severity::Error, ErrorCode::InvalidReferent, subject,
                            "generic referent carries keyword data");
            }
            return;
        }
        if (text::trim(r.keyword).empty()) {
            report_.add(Severity::Error, ErrorCode::InvalidReferent, subject,
                        "individual referent has an empty keyword");
            return;
        }
        if (r.keyword.find_first_of("\r\n") != std::string::npos) {
            report_.add(Severity::Error, ErrorCode::InvalidReferent, subject,
                        "keyword contains a line break");
        }
        if (r.language && !text::is_language_tag(*r.language)) {
            report_.add(Severity::Error, ErrorCode::InvalidReferent, subject,
                        "malformed language tag '" + *r.language + "'");
        }
        if (r.vocabulary && cvs_ && !cvs_->contains(*r.vocabulary, r.keyword, r.language)) {
            std::string where = cvs_->find(*r.vocabulary) ? "controlled vocabulary "
                                                          : "unknown controlled vocabulary ";
            report_.add(Severity::Error, ErrorCode::ControlledTermMiss, subject,
                        text::quote(r.keyword) + " is not in " + where + *r.vocabulary);
        }
    }

    // Signatures that constrain a relation: its own, or else those inherited
    // from the nearest ancestors that declare one.
    const std::vector<std::vector<std::size_t>>& effective_signatures(std::size_t position) {
        auto it = signatures_.find(position);
        if (it != signatures_.end()) return it->second;
        std::vector<std::vector<std::size_t>> out;
        const TypeInfo& info = v_.info(TypeKind::Relation, position);
        if (info.signature) {
            out.push_back(*info.signature);
        } else {
            std::set<std::vector<std::size_t>> seen;
            for (std::size_t parent : info.parents) {
                for (const auto& sig : effective_signatures(parent)) {
                    if (seen.insert(sig).second) out.push_back(sig);
                }
            }
        }
        return signatures_.emplace(position, std::move(out)).first->second;
    }

    void check_edge(const ConceptualGraph& g, const RelationEdge& edge,
                    const std::string& subject) {
        std::vector<const ConceptNode*> args;
        for (NodeId id : edge.args) {
            const ConceptNode* n = g.find(id);
            if (!n) {
                report_.add(Severity::Error, ErrorCode::UnknownNode, subject,
                            "argument " + std::to_string(id.value) + " does not resolve");
                return;
            }
            args.push_back(n);
        }
        if (!known(edge.type, TypeKind::Relation)) {
            report_.add(Severity::Error, ErrorCode::UnknownType, subject,
                        edge.type.str() + " is not a relation type of the vocabulary");
            return;
        }
        const std::size_t position = *v_.position(edge.type);
        const TypeInfo& info = v_.info(TypeKind::Relation, position);
        if (!edge.type.is_root() && static_cast<int>(args.size()) != info.arity) {
            report_.add(Severity::Error, ErrorCode::ArityMismatch, subject,
                        edge.type.str() + " expects " + std::to_string(info.arity) +
                            " arguments, got " + std::to_string(args.size()));
            return;
        }
        const auto& signatures = effective_signatures(position);
        for (std::size_t slot = 0; slot < args.size(); ++slot) {
            if (!known(args[slot]->type, TypeKind::Theme)) continue;
            const std::size_t actual = *v_.position(args[slot]->type);
            for (const auto& sig : signatures) {
                if (slot < sig.size() && !v_.subsumes(TypeKind::Theme, sig[slot], actual)) {
                    const TypeInfo& want = v_.info(TypeKind::Theme, sig[slot]);
                    report_.add(Severity::Error, ErrorCode::SignatureViolation, subject,
                                "argument " + std::to_string(slot + 1) + " of " +
                                    edge.type.str() + " must be subsumed by " +
                                    (want.id ? want.id->str() : want.label));
                    break;
                }
            }
        }
    }

    const Vocabulary& v_;
    const ControlledVocabularySet* cvs_;
    std::optional<TypeId> discourse_type_;
    std::optional<TypeId> discourse_topic_;
    std::map<std::size_t, std::vector<std::vector<std::size_t>>> signatures_;
    ValidationReport report_;
};

} // namespace

ValidationReport check_well_formed(const ConceptualGraph& g, const Vocabulary& v,
                                   const ControlledVocabularySet* vocabularies) {
    Checker checker(v, vocabularies);
    checker.check(g, "");
    return checker.take();
}

} // namespace pci
