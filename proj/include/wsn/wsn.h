#ifndef WSN_WSN_H_
#define WSN_WSN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WSN_API __declspec(dllexport)
#else
#define WSN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsn_status {
  WSN_OK = 0,
  WSN_INVALID_ARGUMENT = 1,
  WSN_OUT_OF_RANGE = 2,
  WSN_DEGENERATE = 3,
  WSN_RANK_DEFICIENT = 4,
  WSN_NOT_CONVERGED = 5,
  WSN_PARSE = 6,
  WSN_IO = 7,
  WSN_INTERNAL = 99
} wsn_status;

typedef enum wsn_method { WSN_PDTM = 0, WSN_DDTM = 1 } wsn_method;

typedef struct wsn_settings wsn_settings;
typedef struct wsn_network wsn_network;
typedef struct wsn_record wsn_record;

/* Message of the last failed call on this thread; "" after a success. */
WSN_API const char* wsn_last_error(void);
WSN_API const char* wsn_version(void);

/* Settings: every key has a default; set() validates the value. */
WSN_API wsn_status wsn_settings_create(wsn_settings** out);
WSN_API void wsn_settings_destroy(wsn_settings* s);
WSN_API wsn_status wsn_settings_set(wsn_settings* s, const char* key, const char* value);
WSN_API wsn_status wsn_settings_get(const wsn_settings* s, const char* key, const char** value);
WSN_API wsn_status wsn_settings_load_file(wsn_settings* s, const char* path);
WSN_API size_t wsn_settings_key_count(void);
/* Key, default value and help text of the i-th recognised setting. */
WSN_API wsn_status wsn_settings_key_info(size_t i, const char** key, const char** default_value,
                                         const char** help);

/* Commands. Each writes one output file. */
WSN_API wsn_status wsn_cmd_sweep(const wsn_settings* s, const char* out_path);
WSN_API wsn_status wsn_cmd_dataset(const wsn_settings* s, const char* out_path);
WSN_API wsn_status wsn_cmd_analyze(const wsn_settings* s, const char* dataset_path, const char* out_path);
WSN_API wsn_status wsn_cmd_fit_edm(const wsn_settings* s, const char* flows_path, const char* out_path);
WSN_API wsn_status wsn_cmd_compare(const wsn_settings* s, const char* out_path);

typedef struct wsn_node_info {
  double x, y;
  double residual_energy;
  int level; /* -1 when unreachable */
  int relay_degree;
  int alive;
} wsn_node_info;

/* Random deployment from the settings (nodes, tx_radius, area, sink, seed). */
WSN_API wsn_status wsn_network_deploy(const wsn_settings* s, wsn_network** out);
/* Explicit layout; node 0 is the sink. */
WSN_API wsn_status wsn_network_create(const double* xs, const double* ys, const double* energies, size_t n,
                                      double tx_radius, wsn_network** out);
WSN_API void wsn_network_destroy(wsn_network* net);
WSN_API size_t wsn_network_size(const wsn_network* net);
WSN_API wsn_status wsn_network_node(const wsn_network* net, size_t id, wsn_node_info* out);
/* Writes up to `cap` neighbour ids into `ids`; `count` receives the full degree. */
WSN_API wsn_status wsn_network_neighbors(const wsn_network* net, size_t id, int* ids, size_t cap, size_t* count);
/* Shortest-path tree towards the sink. Arrays must hold wsn_network_size()
   entries; unreachable nodes get parent -1 and cost +inf. */
WSN_API wsn_status wsn_network_route(const wsn_network* net, wsn_method method, double alpha, int* parents,
                                     double* costs);
WSN_API wsn_status wsn_network_write_snapshot(const wsn_network* net, const char* path);

typedef struct wsn_totals {
  long generated;
  long delivered;
  long lost;
  int dead_nodes_at_end;
  double lifetime;
  double energy_consumed;
  int slots;
} wsn_totals;

typedef struct wsn_slot {
  int slot;
  long generated;
  long delivered;
  long lost;
  long new_dead;
  double energy_consumed;
} wsn_slot;

/* Runs to completion. With `net` non-null its layout is used instead of a
   fresh deployment. */
WSN_API wsn_status wsn_run_experiment(const wsn_settings* s, const wsn_network* net, wsn_record** out);
WSN_API void wsn_record_destroy(wsn_record* rec);
WSN_API wsn_status wsn_record_totals(const wsn_record* rec, wsn_totals* out);
WSN_API wsn_status wsn_record_slot(const wsn_record* rec, size_t index, wsn_slot* out);
WSN_API wsn_status wsn_record_write(const wsn_record* rec, const char* path);

/* Radio and analytics helpers. */
WSN_API wsn_status wsn_tx_energy(double e_amp, double alpha, int packet_bits, double distance, long packets,
                                 double* out);
WSN_API wsn_status wsn_pearson(const double* x, const double* y, size_t n, double* out);
WSN_API wsn_status wsn_spearman(const double* x, const double* y, size_t n, double* out);
WSN_API wsn_status wsn_nonlinear_corr(const double* x, const double* y, size_t n, int degree, double* out);
WSN_API wsn_status wsn_p_value(double r, size_t n, double* out);

typedef struct wsn_eval {
  double mape; /* NaN when undefined */
  double pred25;
  double rmse;
  double r2;
  double r2_conventional;
} wsn_eval;

WSN_API wsn_status wsn_evaluate(const double* actual, const double* predicted, size_t n, wsn_eval* out);

#ifdef __cplusplus
}
#endif

#endif  // WSN_WSN_H_
