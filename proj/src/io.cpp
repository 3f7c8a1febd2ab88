#include "qttc/io.hpp"

#include <limits>
#include <sstream>

#include <json.hpp>

namespace qttc {

using nlohmann::json;

std::string_view to_string(InstanceKind kind) {
    return kind == InstanceKind::network ? "network" : "cap";
}

std::string_view to_string(EnumerationMode mode) {
    return mode == EnumerationMode::balanced ? "balanced" : "all";
}

std::string_view to_string(BlockingRule rule) {
    return rule == BlockingRule::quota_aware ? "quota-aware" : "hyper-relation";
}

namespace {

// ---- writing -------------------------------------------------------------

/// Objects are expanded one key per line; arrays are expanded only when they
/// hold containers, so id lists stay on one line.
void write_value(std::ostringstream& out, const json& value, int depth) {
    const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (value.is_object()) {
        if (value.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (!first) out << ",\n";
            first = false;
            out << pad << json(it.key()).dump() << ": ";
            write_value(out, it.value(), depth + 1);
        }
        out << "\n" << close_pad << "}";
        return;
    }
    if (value.is_array()) {
        bool nested = false;
        for (const auto& v : value) nested = nested || v.is_structured();
        if (!nested) {
            out << value.dump();
            return;
        }
        out << "[\n";
        bool first = true;
        for (const auto& v : value) {
            if (!first) out << ",\n";
            first = false;
            out << pad;
            write_value(out, v, depth + 1);
        }
        out << "\n" << close_pad << "]";
        return;
    }
    out << value.dump();
}

std::string render(const json& doc) {
    std::ostringstream out;
    write_value(out, doc, 0);
    out << "\n";
    return out.str();
}

json price_json(const Price& p) {
    if (p <= std::numeric_limits<std::uint64_t>::max()) return p.convert_to<std::uint64_t>();
    return p.str();
}

json sets_json(const std::vector<std::vector<Id>>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

json check_json(const PropertyCheck& check) {
    return check.pass ? "pass" : "fail";
}

// ---- reading -------------------------------------------------------------

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where = "") {
    if (!obj.is_object()) fail_at(where.empty() ? "/" : where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail_at(where.empty() ? "/" : where, "missing key \"" + key + "\"");
    return *it;
}

std::uint64_t read_uint(const json& v, const std::string& where,
                        std::uint64_t max = std::numeric_limits<Id>::max()) {
    if (!v.is_number_unsigned()) fail_at(where, "expected a non-negative integer");
    const auto x = v.get<std::uint64_t>();
    if (x > max) fail_at(where, "value " + std::to_string(x) + " is too large");
    return x;
}

std::vector<Id> read_ids(const json& v, const std::string& where) {
    if (!v.is_array()) fail_at(where, "expected an array of ids");
    std::vector<Id> ids;
    ids.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        ids.push_back(static_cast<Id>(read_uint(v[k], where + "/" + std::to_string(k))));
    }
    return ids;
}

std::vector<std::vector<Id>> read_sets(const json& v, const std::string& where) {
    if (!v.is_array()) fail_at(where, "expected an array of arrays");
    std::vector<std::vector<Id>> sets;
    for (std::size_t k = 0; k < v.size(); ++k) sets.push_back(read_ids(v[k], where + "/" + std::to_string(k)));
    return sets;
}

InstanceKind read_kind(const json& doc) {
    const auto& kind = require(doc, "kind");
    if (kind == "network") return InstanceKind::network;
    if (kind == "cap") return InstanceKind::cap;
    fail_at("/kind", "expected \"network\" or \"cap\"");
}

std::vector<Preference> read_preferences(const json& doc, std::size_t agents) {
    const auto& v = require(doc, "preferences");
    auto orders = read_sets(v, "/preferences");
    if (orders.size() != agents) {
        fail_at("/preferences", "expected " + std::to_string(agents) + " preferences, got " +
                                    std::to_string(orders.size()));
    }
    std::vector<Preference> prefs;
    for (auto& order : orders) prefs.emplace_back(std::move(order));
    return prefs;
}

void reject_violations(const ValidationResult& result) {
    if (result.ok()) return;
    const auto& first = result.violations.front();
    std::string where = first.agent ? "/preferences/" + std::to_string(*first.agent) : std::string("/");
    // quota and endowment problems point at their own arrays
    if (first.message.rfind("q(", 0) == 0) where = "/quotas/" + std::to_string(*first.agent);
    if (first.message.find("endow") != std::string::npos && first.agent) {
        where = "/endowments/" + std::to_string(*first.agent);
    }
    fail_at(where, result.summary());
}

Price read_price(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) return Price(v.get<std::uint64_t>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail_at(where, "bad price");
        return Price(s);
    }
    fail_at(where, "expected a price");
}

PropertyCheck read_check(const json& props, const std::string& key) {
    PropertyCheck check;
    const auto& status = require(props, key, "/properties");
    if (status != "pass" && status != "fail") fail_at("/properties/" + key, "expected \"pass\" or \"fail\"");
    check.pass = status == "pass";
    if (auto ce = props.find("counterexamples"); ce != props.end() && ce->contains(key)) {
        for (const auto& line : (*ce)[key]) check.counterexamples.push_back(line.get<std::string>());
    }
    return check;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
    const json doc = parse_json(text);
    InstanceFile file;
    file.kind = read_kind(doc);
    const auto agents = static_cast<std::size_t>(read_uint(require(doc, "agents"), "/agents"));

    if (file.kind == InstanceKind::network) {
        auto quotas = read_ids(require(doc, "quotas"), "/quotas");
        if (quotas.size() != agents) {
            fail_at("/quotas", "expected " + std::to_string(agents) + " quotas, got " + std::to_string(quotas.size()));
        }
        file.network.quotas.assign(quotas.begin(), quotas.end());
        file.network.preferences = read_preferences(doc, agents);
        reject_violations(validate_network_instance(file.network));
    } else {
        file.cap.item_count = static_cast<std::size_t>(read_uint(require(doc, "items"), "/items"));
        file.cap.endowments = read_sets(require(doc, "endowments"), "/endowments");
        if (file.cap.endowments.size() != agents) {
            fail_at("/endowments", "expected " + std::to_string(agents) + " endowments");
        }
        file.cap.preferences = read_preferences(doc, agents);
        reject_violations(validate_cap_instance(file.cap));
        canonicalize(file.cap.endowments);
    }

    if (auto it = doc.find("labels"); it != doc.end()) {
        Labels labels;
        try {
            if (it->contains("agents")) labels.agents = (*it)["agents"].get<std::vector<std::string>>();
            if (it->contains("items")) labels.items = (*it)["items"].get<std::vector<std::string>>();
        } catch (const json::exception&) {
            fail_at("/labels", "expected arrays of strings");
        }
        if (!labels.agents.empty() && labels.agents.size() != agents) {
            fail_at("/labels/agents", "expected one label per agent");
        }
        file.labels = std::move(labels);
    }
    if (auto it = doc.find("arbitraryPreferences"); it != doc.end()) {
        if (!it->is_boolean()) fail_at("/arbitraryPreferences", "expected a boolean");
        file.arbitrary_preferences = it->get<bool>();
    }
    return file;
}

std::string serialize_instance(const InstanceFile& file) {
    json doc;
    doc["kind"] = to_string(file.kind);
    if (file.kind == InstanceKind::network) {
        doc["agents"] = file.network.agent_count();
        doc["quotas"] = file.network.quotas;
        json prefs = json::array();
        for (const auto& p : file.network.preferences) prefs.push_back(p.order());
        doc["preferences"] = prefs;
    } else {
        doc["agents"] = file.cap.agent_count();
        doc["items"] = file.cap.item_count;
        doc["endowments"] = sets_json(file.cap.endowments);
        json prefs = json::array();
        for (const auto& p : file.cap.preferences) prefs.push_back(p.order());
        doc["preferences"] = prefs;
    }
    if (file.labels) {
        json labels = json::object();
        if (!file.labels->agents.empty()) labels["agents"] = file.labels->agents;
        if (!file.labels->items.empty()) labels["items"] = file.labels->items;
        doc["labels"] = labels;
    }
    if (file.arbitrary_preferences) doc["arbitraryPreferences"] = true;
    return render(doc);
}

ResultFile parse_result(std::string_view text) {
    const json doc = parse_json(text);
    ResultFile file;
    if (doc.is_object() && doc.contains("kind")) file.kind = read_kind(doc);
    file.assignments = read_sets(require(doc, "assignments"), "/assignments");
    canonicalize(file.assignments);

    if (auto it = doc.find("stages"); it != doc.end()) {
        file.stages = static_cast<std::uint32_t>(read_uint(*it, "/stages"));
    }
    if (auto it = doc.find("transfers"); it != doc.end()) {
        std::vector<Transfer> transfers;
        const auto rows = read_sets(*it, "/transfers");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k].size() != 3) fail_at("/transfers/" + std::to_string(k), "expected [receiver, item, stage]");
            transfers.push_back({rows[k][0], rows[k][1], rows[k][2]});
        }
        file.transfers = std::move(transfers);
    }
    if (auto it = doc.find("prices"); it != doc.end()) {
        PriceTable table;
        const auto& stage = require(*it, "stagePrices", "/prices");
        for (std::size_t k = 0; k < stage.size(); ++k) {
            table.stage_prices.push_back(read_price(stage[k], "/prices/stagePrices/" + std::to_string(k)));
        }
        const auto& personal = require(*it, "personalized", "/prices");
        for (std::size_t k = 0; k < personal.size(); ++k) {
            const std::string where = "/prices/personalized/" + std::to_string(k);
            const auto& row = personal[k];
            if (!row.is_array() || row.size() != 3) fail_at(where, "expected [agent, item, price]");
            table.personalized[{static_cast<Id>(read_uint(row[0], where)), static_cast<Id>(read_uint(row[1], where))}] =
                read_price(row[2], where);
        }
        const auto& market = require(*it, "market", "/prices");
        for (std::size_t k = 0; k < market.size(); ++k) {
            if (market[k].is_null()) {
                table.market.emplace_back(std::nullopt);
            } else {
                table.market.emplace_back(read_price(market[k], "/prices/market/" + std::to_string(k)));
            }
        }
        file.prices = std::move(table);
    }
    if (auto it = doc.find("properties"); it != doc.end()) {
        PriceReport report;
        report.undercut = read_check(*it, "i");
        report.preferred_costs_more = read_check(*it, "ii");
        report.budget_balance = read_check(*it, "iii");
        file.properties = std::move(report);
    }
    if (auto it = doc.find("certificate"); it != doc.end()) {
        BlockingCertificate cert;
        cert.coalition = read_ids(require(*it, "coalition", "/certificate"), "/certificate/coalition");
        cert.permutation = read_ids(require(*it, "permutation", "/certificate"), "/certificate/permutation");
        const auto& witnesses = require(*it, "witnesses", "/certificate");
        for (std::size_t k = 0; k < witnesses.size(); ++k) {
            if (witnesses[k].is_null()) {
                cert.witnesses.emplace_back(std::nullopt);
            } else {
                cert.witnesses.emplace_back(
                    static_cast<Id>(read_uint(witnesses[k], "/certificate/witnesses/" + std::to_string(k))));
            }
        }
        if (it->contains("offeredItems")) {
            cert.offered_items = read_ids((*it)["offeredItems"], "/certificate/offeredItems");
        }
        file.certificate = std::move(cert);
    }
    return file;
}

std::string serialize_result(const ResultFile& file) {
    json doc;
    doc["kind"] = to_string(file.kind);
    doc["assignments"] = sets_json(file.assignments);
    if (file.stages) doc["stages"] = *file.stages;
    if (file.transfers) {
        json rows = json::array();
        for (const auto& t : *file.transfers) rows.push_back({t.receiver, t.item, t.stage});
        doc["transfers"] = rows;
    }
    if (file.prices) {
        json prices;
        json stage = json::array();
        for (const auto& p : file.prices->stage_prices) stage.push_back(price_json(p));
        prices["stagePrices"] = stage;
        json personal = json::array();
        for (const auto& [key, p] : file.prices->personalized) {
            personal.push_back({key.first, key.second, price_json(p)});
        }
        prices["personalized"] = personal;
        json market = json::array();
        for (const auto& p : file.prices->market) market.push_back(p ? price_json(*p) : json(nullptr));
        prices["market"] = market;
        doc["prices"] = prices;
    }
    if (file.properties) {
        json props;
        props["i"] = check_json(file.properties->undercut);
        props["ii"] = check_json(file.properties->preferred_costs_more);
        props["iii"] = check_json(file.properties->budget_balance);
        json ce = json::object();
        if (!file.properties->undercut.counterexamples.empty()) ce["i"] = file.properties->undercut.counterexamples;
        if (!file.properties->preferred_costs_more.counterexamples.empty()) {
            ce["ii"] = file.properties->preferred_costs_more.counterexamples;
        }
        if (!file.properties->budget_balance.counterexamples.empty()) {
            ce["iii"] = file.properties->budget_balance.counterexamples;
        }
        if (!ce.empty()) props["counterexamples"] = ce;
        doc["properties"] = props;
    }
    if (file.certificate) {
        json cert;
        cert["coalition"] = file.certificate->coalition;
        cert["permutation"] = file.certificate->permutation;
        json witnesses = json::array();
        for (const auto& w : file.certificate->witnesses) witnesses.push_back(w ? json(*w) : json(nullptr));
        cert["witnesses"] = witnesses;
        if (!file.certificate->offered_items.empty()) cert["offeredItems"] = file.certificate->offered_items;
        doc["certificate"] = cert;
    }
    return render(doc);
}

std::string serialize_network_list(const std::vector<DirectedNetwork>& networks, EnumerationMode mode,
                                   BlockingRule rule) {
    json doc;
    doc["kind"] = "network";
    doc["mode"] = to_string(mode);
    doc["rule"] = to_string(rule);
    json list = json::array();
    for (const auto& net : networks) list.push_back(sets_json(net.assignments));
    doc["networks"] = list;
    doc["count"] = networks.size();
    return render(doc);
}

}  // namespace qttc
