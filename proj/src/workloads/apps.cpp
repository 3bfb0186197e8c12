#include "fusesim/workloads/apps.hpp"

namespace fusesim {

namespace {

TaskSpec Task(std::string id, double cpu_ms, int parallelism = 1) {
  TaskSpec task;
  task.id = std::move(id);
  task.cpu_work = cpu_ms;
  task.parallelism = parallelism;
  return task;
}

void Sync(TaskSpec& task, const std::string& callee) { task.calls.push_back({callee, CallMode::kSync}); }

void Async(TaskSpec& task, const std::string& callee) { task.calls.push_back({callee, CallMode::kAsync}); }

void Io(TaskSpec& task, const std::string& service, double latency_ms, int count = 1) {
  task.io_calls.push_back({service, latency_ms, count});
}

}  // namespace

AppSpec MakeTreeApp(const TreeOptions& o) {
  TaskSpec a = Task("A", o.light_cpu_ms);
  Sync(a, "B");
  Async(a, "C");
  TaskSpec b = Task("B", o.light_cpu_ms);
  Sync(b, "D");
  Sync(b, "E");
  TaskSpec c = Task("C", o.heavy_cpu_ms, o.heavy_parallelism);
  Async(c, "F");
  Async(c, "G");

  AppSpec app;
  app.tasks = {a,
               b,
               c,
               Task("D", o.light_cpu_ms),
               Task("E", o.light_cpu_ms),
               Task("F", o.heavy_cpu_ms, o.heavy_parallelism),
               Task("G", o.heavy_cpu_ms, o.heavy_parallelism)};
  app.roots = {"A"};
  return app;
}

AppSpec MakeIotApp(const IotOptions& o) {
  const double db = o.db_latency_ms;

  TaskSpec as = Task("AS", o.helper_cpu_ms);
  Io(as, "db-write", db);
  Async(as, "CA");
  Async(as, "CS");
  Async(as, "CT");
  Async(as, "CW");

  TaskSpec ca = Task("CA", o.analysis_cpu_ms);
  Sync(ca, "DJ");
  TaskSpec cs = Task("CS", o.analysis_cpu_ms);
  Sync(cs, "CSA");
  Sync(cs, "CSL");
  TaskSpec ct = Task("CT", o.analysis_cpu_ms);
  TaskSpec cw = Task("CW", o.analysis_cpu_ms);
  Sync(cw, "I");

  TaskSpec dj = Task("DJ", o.helper_cpu_ms);
  Io(dj, "db-write", db);
  TaskSpec csa = Task("CSA", o.helper_cpu_ms);
  Io(csa, "db-write", db);
  TaskSpec csl = Task("CSL", o.helper_cpu_ms);
  Io(csl, "db-read", db, 2);
  Io(csl, "db-write", db);
  TaskSpec i = Task("I", o.helper_cpu_ms);
  Sync(i, "SE");
  TaskSpec se = Task("SE", o.helper_cpu_ms);
  Io(se, "db-write", db);

  AppSpec app;
  app.tasks = {as, ca, cs, csa, csl, ct, cw, dj, i, se};
  app.roots = {"AS"};
  return app;
}

AppSpec MakeWebApp(const WebOptions& o) {
  const double cpu = o.light_cpu_ms;
  const double db = o.db_latency_ms;

  TaskSpec frontend = Task("frontend", cpu);
  for (const char* callee : {"cart", "recommendations", "listProducts", "currency", "ads", "shipping"}) {
    Sync(frontend, callee);
  }

  TaskSpec add_to_cart = Task("addToCart", cpu);
  Sync(add_to_cart, "listProducts");
  Sync(add_to_cart, "cartWrite");
  Async(add_to_cart, "recommendations");

  TaskSpec checkout = Task("checkout", cpu);
  for (const char* callee : {"cart", "listProducts", "shipping", "currency", "payment"}) Sync(checkout, callee);
  for (const char* callee : {"shipOrder", "email", "emptyCart"}) Async(checkout, callee);

  TaskSpec recommendations = Task("recommendations", cpu);
  Sync(recommendations, "listProducts");

  TaskSpec cart = Task("cart", cpu);
  Io(cart, "db-read", db);
  TaskSpec cart_write = Task("cartWrite", cpu);
  Io(cart_write, "db-write", db);
  TaskSpec empty_cart = Task("emptyCart", cpu);
  Io(empty_cart, "db-write", db);
  TaskSpec list_products = Task("listProducts", cpu);
  Io(list_products, "db-read", db);
  TaskSpec currency = Task("currency", cpu);
  Sync(currency, "exchangeRates");
  TaskSpec exchange_rates = Task("exchangeRates", cpu);
  Io(exchange_rates, "rates-api", db);
  TaskSpec ads = Task("ads", cpu);
  TaskSpec shipping = Task("shipping", cpu);
  TaskSpec payment = Task("payment", cpu);
  Sync(payment, "cardValidation");
  TaskSpec card_validation = Task("cardValidation", cpu);
  TaskSpec ship_order = Task("shipOrder", cpu);
  Io(ship_order, "db-write", db);
  TaskSpec email = Task("email", cpu);
  Sync(email, "emailTemplate");
  TaskSpec email_template = Task("emailTemplate", cpu);

  AppSpec app;
  app.tasks = {frontend, add_to_cart, checkout,  recommendations, cart,    cart_write,
               empty_cart, list_products, currency, exchange_rates, ads,   shipping,
               payment,  card_validation, ship_order, email,        email_template};
  app.roots = {"frontend", "addToCart", "checkout", "recommendations"};
  app.operations = {"addToCart", "frontend", "checkout"};
  return app;
}

bool IsBuiltinApp(const std::string& name) { return name == "tree" || name == "iot" || name == "web"; }

AppSpec MakeBuiltinApp(const std::string& name) {
  if (name == "tree") return MakeTreeApp();
  if (name == "iot") return MakeIotApp();
  if (name == "web") return MakeWebApp();
  throw ConfigError("unknown builtin app '" + name + "' (expected tree, iot or web)");
}

}  // namespace fusesim
