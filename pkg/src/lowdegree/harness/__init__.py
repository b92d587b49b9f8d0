"""Instance generation, experiment execution, reporting and the command-line front end."""
