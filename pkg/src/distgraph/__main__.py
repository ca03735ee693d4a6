from distgraph.cli import main_exit

main_exit()
