#include "egomap/http_client.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "egomap/errors.hpp"

namespace egomap {

using nlohmann::json;

EndpointConfig endpoint_config_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw InvalidSpecError("endpoint description is not a JSON object");
    }
    EndpointConfig config;
    config.base_url = j.value("base_url", std::string{});
    config.auth_header = j.value("auth_header", std::string{});
    config.auth_value_template = j.value("auth_value_template", std::string{});
    config.resolve_path = j.value("resolve_path", std::string{});
    config.followers_path = j.value("followers_path", std::string{});
    config.followees_path = j.value("followees_path", std::string{});
    config.profiles_path = j.value("profiles_path", std::string{});
    config.cursor_param = j.value("cursor_param", std::string{"cursor"});
    config.page_size_param = j.value("page_size_param", std::string{"count"});
    config.page_size = j.value("page_size", std::size_t{200});
    if (config.base_url.empty() || config.resolve_path.empty() ||
        config.followers_path.empty() || config.followees_path.empty()) {
        throw InvalidSpecError("endpoint description needs base_url and path templates");
    }
    return config;
}

EndpointConfig load_endpoint_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return endpoint_config_from_string(buffer.str());
}

std::string expand_env_template(const std::string& text) {
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '$' && i + 1 < text.size() && text[i + 1] == '{') {
            auto end = text.find('}', i + 2);
            if (end != std::string::npos) {
                std::string name = text.substr(i + 2, end - i - 2);
                if (const char* value = std::getenv(name.c_str())) out += value;
                i = end;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

namespace {

std::string url_encode(const std::string& text) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

std::string substitute(std::string path, const std::string& placeholder,
                       const std::string& value) {
    auto at = path.find(placeholder);
    if (at != std::string::npos) {
        path.replace(at, placeholder.size(), url_encode(value));
    }
    return path;
}

AccountProfile profile_from_json(const json& j) {
    AccountProfile profile;
    profile.id = j.value("id", std::string{});
    profile.handle = j.value("handle", std::string{});
    profile.bio = j.value("bio", std::string{});
    profile.declared_location = j.value("declared_location", std::string{});
    profile.url = j.value("url", std::string{});
    return profile;
}

}  // namespace

struct HttpListProvider::Impl {
    EndpointConfig config;
    httplib::Client client;
    httplib::Headers headers;

    explicit Impl(EndpointConfig cfg) : config(std::move(cfg)), client(config.base_url) {
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        if (!config.auth_header.empty()) {
            headers.emplace(config.auth_header,
                            expand_env_template(config.auth_value_template));
        }
    }

    json get_json(const std::string& path, const AccountId& context) {
        auto response = client.Get(path, headers);
        if (!response) {
            throw TransientFetchError("no response from " + config.base_url + path);
        }
        if (response->status == 403) {
            throw ProtectedAccountError(context);
        }
        if (response->status == 404) {
            throw UnknownHandleError(context);
        }
        if (response->status >= 500 || response->status == 429) {
            throw TransientFetchError("status " + std::to_string(response->status) +
                                      " from " + path);
        }
        if (response->status != 200) {
            throw IoError("status " + std::to_string(response->status) + " from " + path);
        }
        json j = json::parse(response->body, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            throw TransientFetchError("unparseable response from " + path);
        }
        return j;
    }

    ListPage list_page(std::string path, const AccountId& account,
                       const std::string& cursor) {
        path = substitute(std::move(path), "{id}", account);
        char separator = path.find('?') == std::string::npos ? '?' : '&';
        path += separator + config.page_size_param + "=" + std::to_string(config.page_size);
        if (!cursor.empty()) {
            path += "&" + config.cursor_param + "=" + url_encode(cursor);
        }
        json j = get_json(path, account);
        ListPage page;
        if (j.contains("ids")) {
            for (const auto& id : j["ids"]) page.ids.push_back(id.get<std::string>());
        }
        page.next_cursor = j.value("next_cursor", std::string{});
        return page;
    }
};

HttpListProvider::HttpListProvider(EndpointConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

HttpListProvider::~HttpListProvider() = default;

std::optional<AccountProfile> HttpListProvider::resolve(const std::string& handle) {
    std::string path = substitute(impl_->config.resolve_path, "{handle}", handle);
    try {
        return profile_from_json(impl_->get_json(path, handle));
    } catch (const UnknownHandleError&) {
        return std::nullopt;
    }
}

ListPage HttpListProvider::followers_page(const AccountId& account,
                                          const std::string& cursor) {
    return impl_->list_page(impl_->config.followers_path, account, cursor);
}

ListPage HttpListProvider::followees_page(const AccountId& account,
                                          const std::string& cursor) {
    return impl_->list_page(impl_->config.followees_path, account, cursor);
}

std::vector<AccountProfile> HttpListProvider::profiles(const std::vector<AccountId>& ids) {
    if (impl_->config.profiles_path.empty() || ids.empty()) return {};
    std::string joined;
    for (const auto& id : ids) {
        if (!joined.empty()) joined += ',';
        joined += id;
    }
    std::string path = impl_->config.profiles_path;
    char separator = path.find('?') == std::string::npos ? '?' : '&';
    path += separator;
    path += "ids=" + url_encode(joined);
    json j = impl_->get_json(path, ids.front());
    std::vector<AccountProfile> result;
    if (j.contains("profiles")) {
        for (const auto& p : j["profiles"]) result.push_back(profile_from_json(p));
    }
    return result;
}

}  // namespace egomap
