#include "oa/annotea.hpp"

#include <algorithm>
#include <array>

namespace oa::annotea {
namespace {

auto not_representable(const std::string& why) -> Error {
    return Error(Errc::not_representable, why);
}

}  // namespace

auto motivation_for(const std::string& subclass) -> Motivation {
    if (subclass == "Question") return Motivation::of(Motivation::Kind::questioning);
    if (subclass == "Comment") return Motivation::of(Motivation::Kind::commenting);
    return Motivation::ext(Iri::parse(std::string(annotation_type_ns) + percent_encode(subclass)));
}

auto subclass_for(const Motivation& m) -> std::optional<std::string> {
    switch (m.kind) {
        case Motivation::Kind::questioning: return "Question";
        case Motivation::Kind::commenting:  return "Comment";
        case Motivation::Kind::extension: {
            const std::string_view ns = annotation_type_ns;
            if (!m.extension || !m.extension->str().starts_with(ns)) return std::nullopt;
            auto label = percent_decode(std::string_view(m.extension->str()).substr(ns.size()));
            // Question and Comment have their own motivations; an extension
            // spelling them would not survive a round trip.
            if (label.empty() || label == "Question" || label == "Comment") return std::nullopt;
            return label;
        }
        default: return std::nullopt;
    }
}

auto import_record(const Record& r) -> Annotation {
    if (!r.annotates) throw Error(Errc::missing_annotates, "Annotea record has no annotated resource");
    if (!r.body) throw Error(Errc::missing_body, "Annotea record has no body");

    Annotation a;
    if (r.context) {
        a.targets.push_back(SpecificRef{
            SpecificResource{*r.annotates, FragmentSelector{*r.context, Iri::parse(xpointer_scheme)}, std::nullopt,
                             std::nullopt},
            std::nullopt});
    } else {
        a.targets.push_back(ExternalResource{*r.annotates, std::nullopt});
    }
    if (const auto* iri = std::get_if<Iri>(&*r.body)) {
        a.bodies.push_back(ExternalResource{*iri, std::nullopt});
    } else {
        const auto& inline_body = std::get<InlineBody>(*r.body);
        a.bodies.push_back(EmbeddedResource{EmbeddedContent{inline_body.text, inline_body.media_type, std::nullopt},
                                            std::nullopt});
    }
    if (r.author) a.provenance.annotated_by = Agent{std::nullopt, *r.author};
    a.provenance.annotated_at = r.created;
    a.provenance.serialized_at = r.modified;
    if (r.subclass) a.motivation = motivation_for(*r.subclass);
    return a;
}

auto export_record(const Annotation& a) -> Record {
    if (a.targets.size() != 1) throw not_representable("Annotea records carry exactly one annotated resource");
    if (a.bodies.size() != 1) throw not_representable("Annotea records carry exactly one body");
    if (a.style) throw not_representable("Annotea has no styles");
    if (!a.extensions.empty()) throw not_representable("extension keys have no Annotea form");
    if (a.provenance.serialized_by) throw not_representable("Annotea has no serializing agent");

    Record r;
    const auto& target = a.targets.front();
    if (const auto* ext = std::get_if<ExternalResource>(&target)) {
        if (ext->dcmi) throw not_representable("Annotea targets carry no DCMI type");
        r.annotates = ext->iri;
    } else if (const auto* spec = std::get_if<SpecificRef>(&target)) {
        const auto* frag = spec->spec.selector ? std::get_if<FragmentSelector>(&*spec->spec.selector) : nullptr;
        if (!frag || spec->spec.state || spec->spec.style_class || spec->dcmi ||
            frag->conforms_to != Iri::parse(xpointer_scheme)) {
            throw not_representable("only XPointer fragment selections map to an Annotea context");
        }
        r.annotates = spec->spec.source;
        r.context = frag->value;
    } else {
        throw not_representable("target kind has no Annotea form");
    }

    const auto& body = a.bodies.front();
    if (const auto* ext = std::get_if<ExternalResource>(&body)) {
        if (ext->dcmi) throw not_representable("Annotea bodies carry no DCMI type");
        r.body = ext->iri;
    } else if (const auto* emb = std::get_if<EmbeddedResource>(&body)) {
        if (emb->dcmi || emb->content.language || !emb->content.media_type) {
            throw not_representable("embedded body has fields Annotea cannot hold");
        }
        r.body = InlineBody{emb->content.text, *emb->content.media_type};
    } else {
        throw not_representable("only IRI or inline bodies map to Annotea");
    }

    if (const auto& agent = a.provenance.annotated_by) {
        if (agent->id || !agent->name) throw not_representable("Annotea authors are plain names");
        r.author = agent->name;
    }
    r.created = a.provenance.annotated_at;
    r.modified = a.provenance.serialized_at;
    if (a.motivation) {
        r.subclass = subclass_for(*a.motivation);
        if (!r.subclass) throw not_representable("motivation '" + motivation_name(*a.motivation) + "' has no Annotea subclass");
    }
    return r;
}

auto record_to_json(const Record& r) -> nlohmann::ordered_json {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (r.annotates) j["annotates"] = r.annotates->str();
    if (r.body) {
        if (const auto* iri = std::get_if<Iri>(&*r.body)) {
            j["body"] = iri->str();
        } else {
            const auto& b = std::get<InlineBody>(*r.body);
            j["bodyText"] = b.text;
            if (b.media_type != InlineBody{}.media_type) j["bodyMediaType"] = b.media_type;
        }
    }
    if (r.context) j["context"] = *r.context;
    if (r.author) j["author"] = *r.author;
    if (r.created) j["created"] = format_timestamp(*r.created);
    if (r.modified) j["modified"] = format_timestamp(*r.modified);
    if (r.subclass) j["type"] = *r.subclass;
    return j;
}

auto record_from_json(const nlohmann::ordered_json& j) -> Record {
    static constexpr std::array<std::string_view, 9> keys{"annotates", "body",   "bodyText", "bodyMediaType", "context",
                                                          "author",    "created", "modified", "type"};
    if (!j.is_object()) throw Error(Errc::malformed_node, "$: Annotea record must be an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw Error(Errc::malformed_node, "$." + key + ": unrecognized key");
        }
        if (!value.is_string()) throw Error(Errc::malformed_node, "$." + key + ": expected a string");
    }
    auto str = [&](const char* key) -> std::optional<std::string> {
        if (!j.contains(key)) return std::nullopt;
        return j.at(key).get<std::string>();
    };
    auto iri = [&](const char* key) -> std::optional<Iri> {
        auto s = str(key);
        if (!s) return std::nullopt;
        auto out = Iri::try_parse(*s);
        if (!out) throw Error(Errc::malformed_node, std::string("$.") + key + ": not an absolute IRI");
        return out;
    };
    auto time = [&](const char* key) -> std::optional<Timestamp> {
        auto s = str(key);
        if (!s) return std::nullopt;
        auto out = try_parse_timestamp(*s);
        if (!out) throw Error(Errc::malformed_node, std::string("$.") + key + ": not an RFC 3339 date-time");
        return out;
    };

    Record r;
    r.annotates = iri("annotates");
    if (j.contains("body") && j.contains("bodyText")) {
        throw Error(Errc::malformed_node, "$: body and bodyText are mutually exclusive");
    }
    if (auto b = iri("body")) r.body = *b;
    if (auto text = str("bodyText")) {
        InlineBody b{*text};
        if (auto mt = str("bodyMediaType")) b.media_type = *mt;
        r.body = std::move(b);
    } else if (j.contains("bodyMediaType")) {
        throw Error(Errc::malformed_node, "$.bodyMediaType: only valid with bodyText");
    }
    r.context = str("context");
    r.author = str("author");
    r.created = time("created");
    r.modified = time("modified");
    r.subclass = str("type");
    return r;
}

}  // namespace oa::annotea
