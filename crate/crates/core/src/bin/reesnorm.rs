fn main() { std::process::exit(reesnorm::cli::main()) }
