fn main() { qjsf::cli::main(); }
