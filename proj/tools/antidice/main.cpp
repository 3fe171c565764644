#include <chrono>
#include <csignal>
#include <iostream>
#include <stop_token>
#include <thread>

#include "cli.hpp"

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

extern "C" void on_signal(int) { g_interrupted = 1; }

}  // namespace

int main(int argc, char** argv) {
  std::stop_source stop;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  // Signal handlers only set a flag; this thread turns it into a stop request
  // so long runs can write a final checkpoint.
  std::jthread watcher([&stop](std::stop_token done) {
    while (!done.stop_requested()) {
      if (g_interrupted) {
        stop.request_stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });

  const int code = antidice::cli::run(argc, argv, std::cout, std::cerr, stop.get_token());
  std::cout.flush();
  return code;
}
