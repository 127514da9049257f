//! Drives the command line in-process, as a test harness would.
//!
//!     cargo run --example cli -- metrics width --regular 4 2 --exact

fn main() {
    let mut args: Vec<String> = vec!["bruhat".into()];
    args.extend(std::env::args().skip(1));
    if args.len() == 1 {
        args.extend(["construct", "even", "-n", "4"].map(String::from));
    }
    let code = bruhat::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    eprintln!("exit code {code}");
}
