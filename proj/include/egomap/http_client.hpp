#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "egomap/fetch.hpp"

namespace egomap {

// Generic paginated JSON API description. The auth value template may
// reference environment variables as ${NAME}; path templates use {handle},
// {id}, {cursor} placeholders. Expected response shapes are documented in
// the README.
struct EndpointConfig {
    std::string base_url;
    std::string auth_header;          // e.g. "Authorization"; empty = no auth
    std::string auth_value_template;  // e.g. "Bearer ${EGOMAP_API_TOKEN}"
    std::string resolve_path;         // {handle}
    std::string followers_path;       // {id}
    std::string followees_path;       // {id}
    std::string profiles_path;        // ids passed via ids= query parameter
    std::string cursor_param = "cursor";
    std::string page_size_param = "count";
    std::size_t page_size = 200;
};

EndpointConfig endpoint_config_from_string(const std::string& text);
EndpointConfig load_endpoint_config(const std::filesystem::path& path);

// Expands ${NAME} from the environment; unset variables expand empty.
std::string expand_env_template(const std::string& text);

class HttpListProvider : public ListProvider {
public:
    explicit HttpListProvider(EndpointConfig config);
    ~HttpListProvider() override;

    std::optional<AccountProfile> resolve(const std::string& handle) override;
    ListPage followers_page(const AccountId& account, const std::string& cursor) override;
    ListPage followees_page(const AccountId& account, const std::string& cursor) override;
    std::vector<AccountProfile> profiles(const std::vector<AccountId>& ids) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace egomap
