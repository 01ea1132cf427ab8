// Drives the JSON API over a real socket.

#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "regret/api.hpp"
#include "temp_dir.hpp"

using namespace regret;
using nlohmann::json;

TEST(Http, LiveRoundTrip) {
  TempDir dir;
  SessionStore store(dir.path());
  Api api(store);
  httplib::Server server;
  const auto route = [&api](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = api.handle({req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", route);
  server.Post(".*", route);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/sessions", R"({"money_scale": 100, "seed": 7})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const std::string id = json::parse(created->body)["session_id"];

  auto next = client.Post("/api/sessions/" + id + "/next", "", "application/json");
  ASSERT_TRUE(next);
  EXPECT_EQ(next->status, 200);
  EXPECT_EQ(json::parse(next->body)["problem"]["display"]["robot"]["outcomes"][1]["amount"], "-$90.00");

  auto again = client.Post("/api/sessions/" + id + "/next", "", "application/json");
  EXPECT_EQ(again->status, 409);

  auto ack = client.Post("/api/sessions/" + id + "/responses", R"({"mu_robot":1,"mu_equal":0.25,"mu_human":0})",
                         "application/json");
  EXPECT_EQ(ack->status, 200);
  EXPECT_EQ(json::parse(ack->body)["progress"]["answered"], 1);

  auto report = client.Get("/api/sessions/" + id + "/report");
  EXPECT_EQ(report->status, 409);
  auto list = client.Get("/api/sessions");
  EXPECT_EQ(list->status, 200);
  EXPECT_EQ(json::parse(list->body)["sessions"].size(), 1u);
  auto missing = client.Get("/api/sessions/zzz/report");
  EXPECT_EQ(missing->status, 404);

  server.stop();
  thread.join();
}
