import seqrx.launcher

seqrx.launcher.launch()
