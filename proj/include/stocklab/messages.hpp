#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stocklab/dates.hpp"

namespace stocklab {

// One StockTwits-style record: `Symbol,Message,Datetime,User,Message_Id`.
struct RawMessage {
    std::string symbol;
    std::string message;
    std::string datetime;  // as read, e.g. "2020-07-16T23:08:47Z"
    std::string user;
    std::string message_id;
};

std::vector<RawMessage> parse_messages_csv(std::istream& in);
void serialize_messages_csv(const std::vector<RawMessage>& messages, std::ostream& out);

}  // namespace stocklab
