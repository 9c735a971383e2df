pub fn run_to_exit_code(_args: Vec<String>) -> i32 { 0 }
