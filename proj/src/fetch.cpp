#include <httplib.h>

#include "stocklab/errors.hpp"
#include "stocklab/market_data.hpp"

namespace stocklab {

std::string fetch_ohlc(const std::string& symbol, Date start, Date end,
                       const std::string& endpoint_base) {
    httplib::Client client(endpoint_base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    std::string path = "/" + symbol + "?start=" + start.to_iso() + "&end=" + end.to_iso();
    auto res = client.Get(path);
    if (!res)
        throw ComputeError("transport failure fetching " + endpoint_base + path + ": " +
                           httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw ComputeError("HTTP status " + std::to_string(res->status) + " fetching " +
                           endpoint_base + path);
    if (res->body.empty())
        throw ComputeError("empty body fetching " + endpoint_base + path);
    return res->body;
}

}  // namespace stocklab
