// SPDX-License-Identifier: Apache-2.0

fn main() -> std::process::ExitCode {
    spapt_cli::app::main_with_args(std::env::args_os())
}
